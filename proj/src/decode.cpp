// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/decode.hpp"

#include <limits>

#include "corais/rng.hpp"

namespace corais {

Assignment decode_greedy(const PolicyMatrix& policy) {
  Assignment asg;
  asg.exec_edge.resize(policy.cols());
  for (Eigen::Index z = 0; z < policy.cols(); ++z) {
    int best = 0;
    double best_p = policy(0, z);
    for (Eigen::Index q = 1; q < policy.rows(); ++q) {
      if (policy(q, z) > best_p) {
        best_p = policy(q, z);
        best = static_cast<int>(q);
      }
    }
    asg.exec_edge[z] = best;
  }
  return asg;
}

DecodeResult decode_sampling(const PolicyMatrix& policy, int n,
                             const Instance& inst, std::uint64_t seed,
                             TqForm form) {
  if (n < 1) throw Error("decode_sampling: n >= 1 required");
  if (policy.rows() != inst.region_size ||
      policy.cols() != inst.num_requests()) {
    throw Error("decode_sampling: policy shape does not match the instance");
  }
  const int q_count = inst.region_size;
  DecodeResult best;
  best.makespan = std::numeric_limits<double>::infinity();
  Assignment candidate;
  candidate.exec_edge.resize(inst.num_requests());
  for (int s = 0; s < n; ++s) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(s));
    for (int z = 0; z < inst.num_requests(); ++z) {
      const double u = rng.next_unit();
      double acc = 0.0;
      int pick = q_count - 1;  // guards against rounding in the cdf walk
      for (int q = 0; q < q_count; ++q) {
        acc += policy(q, z);
        if (u < acc) {
          pick = q;
          break;
        }
      }
      candidate.exec_edge[z] = pick;
    }
    const double m = evaluate(inst, candidate, form).makespan;
    if (m < best.makespan) {
      best.makespan = m;
      best.assignment = candidate;
    }
  }
  if (inst.num_requests() == 0) {
    best.assignment = Assignment{};
    best.makespan = evaluate(inst, best.assignment, form).makespan;
  }
  return best;
}

}  // namespace corais
