// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/objective.hpp"

#include <algorithm>
#include <string>

#include "corais/stateval.hpp"

namespace corais {

ObjectiveBreakdown evaluate(const Instance& inst, const Assignment& asg,
                            TqForm form) {
  require_valid_assignment(inst, asg);
  const int q_count = inst.region_size;
  const double c_t = inst.transmission_constant;

  // Accumulators start from the snapshot values and fold the newly assigned
  // requests in submission order, mirroring extend_snapshot term for term so
  // that evaluating a decision and snapshotting the post-decision state give
  // bit-identical results.
  std::vector<double> mu(q_count), eta(q_count), in_max(q_count),
      out_in_max(q_count), out_local(q_count, 0.0);
  for (int q = 0; q < q_count; ++q) {
    mu[q] = inst.snapshots[q].c_le;
    eta[q] = inst.snapshots[q].c_in;
    in_max[q] = inst.snapshots[q].t_in;
    out_in_max[q] = inst.snapshots[q].b_in;
  }

  for (int z = 0; z < inst.num_requests(); ++z) {
    const RequestSpec& r = inst.requests[z];
    const int q = asg.exec_edge[z];
    const EdgeProfile& exec = inst.edges[q];
    const double compute = eval_phi(exec.phi_coeffs, r.input_size) /
                           static_cast<double>(exec.replica_count);
    const double out_time =
        c_t * r.output_size *
        distance(exec.coords, inst.edges[r.predicted_edge].coords);
    if (r.source_edge == q) {
      mu[q] += compute;
      out_local[q] = std::max(out_local[q], out_time);
    } else {
      eta[q] += compute;
      in_max[q] = std::max(
          in_max[q],
          c_t * r.input_size *
              distance(inst.edges[r.source_edge].coords, exec.coords));
      out_in_max[q] = std::max(out_in_max[q], out_time);
    }
  }

  ObjectiveBreakdown result;
  result.edges.assign(q_count, EdgeBreakdown{});
  result.makespan = 0.0;
  for (int q = 0; q < q_count; ++q) {
    const WorkloadSnapshot& s = inst.snapshots[q];
    EdgeBreakdown& b = result.edges[q];
    b.mu = mu[q];
    b.eta = eta[q];
    b.kappa1 = in_max[q];
    b.out_local = out_local[q];
    if (form == TqForm::standard) {
      b.kappa2 = out_in_max[q];
      b.t = std::max(b.kappa1, b.mu) +
            std::max({b.eta + b.kappa2, std::max(s.b_le, out_local[q])});
    } else {
      b.kappa2 = std::max(out_in_max[q], out_local[q]);
      b.t = std::max(b.kappa1, b.mu) + std::max(b.eta + b.kappa2, s.b_in);
    }
    result.makespan = std::max(result.makespan, b.t);
  }
  return result;
}

double reward(const Instance& inst, const Assignment& asg, TqForm form) {
  return -evaluate(inst, asg, form).makespan;
}

double gap(double candidate_makespan, double reference_makespan) {
  if (!(reference_makespan > 0.0)) {
    throw Error("gap: reference makespan must be positive, got " +
                std::to_string(reference_makespan));
  }
  return candidate_makespan / reference_makespan;
}

}  // namespace corais
