// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "corais/rng.hpp"
#include "corais/stateval.hpp"

namespace corais {

Assignment schedule_local(const Instance& inst) {
  Assignment asg;
  asg.exec_edge.reserve(inst.num_requests());
  for (const auto& r : inst.requests) asg.exec_edge.push_back(r.source_edge);
  return asg;
}

Assignment schedule_predicted(const Instance& inst) {
  Assignment asg;
  asg.exec_edge.reserve(inst.num_requests());
  for (const auto& r : inst.requests) {
    asg.exec_edge.push_back(r.predicted_edge < inst.region_size
                                ? r.predicted_edge
                                : r.source_edge);
  }
  return asg;
}

Assignment schedule_random(const Instance& inst, int k, std::uint64_t seed) {
  if (k < 1) throw Error("schedule_random: k >= 1 required");
  Rng rng(seed);
  Assignment best;
  double best_makespan = std::numeric_limits<double>::infinity();
  Assignment candidate;
  candidate.exec_edge.resize(inst.num_requests());
  for (int s = 0; s < k; ++s) {
    for (int& e : candidate.exec_edge) e = rng.next_index(inst.region_size);
    const double m = evaluate(inst, candidate).makespan;
    if (m < best_makespan) {
      best_makespan = m;
      best = candidate;
    }
  }
  if (inst.num_requests() == 0) best = Assignment{};
  return best;
}

namespace {

// Per-edge partial state of the search; one full copy per depth level keeps
// the accumulators free of subtraction drift on backtracking.
struct EdgeState {
  double mu;       // c_le + assigned local compute
  double eta;      // c_in + assigned transferred compute
  double in_max;   // max(t_in, inbound data transmissions)
  double out_in;   // max(b_in, inbound result transmissions)
  double out_loc;  // max local-result transmission of new work

  double completion(double b_le) const {
    return std::max(in_max, mu) +
           std::max({eta + out_in, b_le, out_loc});
  }
};

struct SearchTables {
  int q_count = 0;
  int z_count = 0;
  std::vector<double> w;        // [z][q] compute / replicas
  std::vector<double> in_t;     // [z][q] inbound data transmission
  std::vector<double> out_t;    // [z][q] result transmission
  std::vector<char> is_local;   // [z][q]
  std::vector<double> b_le;     // [q]
  std::vector<int> order;       // request visit order
  std::vector<double> suffix_min_w;  // remaining unavoidable compute

  double& at(std::vector<double>& m, int z, int q) { return m[z * q_count + q]; }
  double at(const std::vector<double>& m, int z, int q) const {
    return m[z * q_count + q];
  }
};

SearchTables build_tables(const Instance& inst) {
  SearchTables t;
  t.q_count = inst.region_size;
  t.z_count = inst.num_requests();
  t.w.resize(t.z_count * t.q_count);
  t.in_t.resize(t.z_count * t.q_count);
  t.out_t.resize(t.z_count * t.q_count);
  t.is_local.resize(t.z_count * t.q_count);
  t.b_le.resize(t.q_count);
  for (int q = 0; q < t.q_count; ++q) t.b_le[q] = inst.snapshots[q].b_le;
  const double ct = inst.transmission_constant;
  for (int z = 0; z < t.z_count; ++z) {
    const RequestSpec& r = inst.requests[z];
    for (int q = 0; q < t.q_count; ++q) {
      const EdgeProfile& e = inst.edges[q];
      t.at(t.w, z, q) = eval_phi(e.phi_coeffs, r.input_size) /
                        static_cast<double>(e.replica_count);
      t.at(t.in_t, z, q) =
          ct * r.input_size *
          distance(inst.edges[r.source_edge].coords, e.coords);
      t.at(t.out_t, z, q) =
          ct * r.output_size *
          distance(e.coords, inst.edges[r.predicted_edge].coords);
      t.is_local[z * t.q_count + q] = (r.source_edge == q);
    }
  }
  // Largest unavoidable compute first; ties keep submission order.
  std::vector<double> min_w(t.z_count);
  for (int z = 0; z < t.z_count; ++z) {
    double m = std::numeric_limits<double>::infinity();
    for (int q = 0; q < t.q_count; ++q) m = std::min(m, t.at(t.w, z, q));
    min_w[z] = m;
  }
  t.order.resize(t.z_count);
  std::iota(t.order.begin(), t.order.end(), 0);
  std::stable_sort(t.order.begin(), t.order.end(),
                   [&](int a, int b) { return min_w[a] > min_w[b]; });
  t.suffix_min_w.assign(t.z_count + 1, 0.0);
  for (int i = t.z_count - 1; i >= 0; --i) {
    t.suffix_min_w[i] = t.suffix_min_w[i + 1] + min_w[t.order[i]];
  }
  return t;
}

class ExactSearch {
 public:
  ExactSearch(const Instance& inst, std::optional<std::uint64_t> budget)
      : inst_(inst), tables_(build_tables(inst)), budget_(budget) {}

  ExactResult run() {
    seed_incumbent(schedule_local(inst_));
    seed_incumbent(schedule_predicted(inst_));
    const int q_count = tables_.q_count;
    const std::size_t slots =
        static_cast<std::size_t>(tables_.z_count + 1) * q_count;
    levels_.assign(slots, EdgeState{});
    completion_scratch_.assign(slots, 0.0);
    child_scratch_.assign(slots, Child{});
    for (int q = 0; q < q_count; ++q) {
      const WorkloadSnapshot& s = inst_.snapshots[q];
      levels_[q] = EdgeState{s.c_le, s.c_in, s.t_in, s.b_in, 0.0};
    }
    current_.assign(tables_.z_count, -1);
    descend(0, base_compute_sum());
    return ExactResult{best_, evaluate(inst_, best_).makespan, nodes_};
  }

 private:
  double base_compute_sum() const {
    double sum = 0.0;
    for (int q = 0; q < tables_.q_count; ++q) {
      sum += inst_.snapshots[q].c_le + inst_.snapshots[q].c_in;
    }
    return sum;
  }

  void seed_incumbent(Assignment candidate) {
    const double m = evaluate(inst_, candidate).makespan;
    if (m < best_makespan_ ||
        (m == best_makespan_ && candidate.exec_edge < best_.exec_edge)) {
      best_makespan_ = m;
      best_ = std::move(candidate);
    }
  }

  void accept_leaf(double makespan) {
    if (makespan < best_makespan_ ||
        (makespan == best_makespan_ && current_ < best_.exec_edge)) {
      best_makespan_ = makespan;
      best_.exec_edge = current_;
    }
  }

  void descend(int depth, double compute_sum) {
    ++nodes_;
    if (budget_ && nodes_ > *budget_) {
      throw BudgetExceeded(
          "solve_exact: node budget " + std::to_string(*budget_) +
              " exceeded",
          ExactResult{best_, best_makespan_, nodes_});
    }
    const int q_count = tables_.q_count;
    const EdgeState* state = &levels_[static_cast<std::size_t>(depth) * q_count];
    if (depth == tables_.z_count) {
      double makespan = 0.0;
      for (int q = 0; q < q_count; ++q) {
        makespan = std::max(makespan, state[q].completion(tables_.b_le[q]));
      }
      accept_leaf(makespan);
      return;
    }
    const int z = tables_.order[depth];

    double* completion =
        &completion_scratch_[static_cast<std::size_t>(depth) * q_count];
    for (int q = 0; q < q_count; ++q) {
      completion[q] = state[q].completion(tables_.b_le[q]);
    }

    Child* children = &child_scratch_[static_cast<std::size_t>(depth) * q_count];
    for (int q = 0; q < q_count; ++q) {
      EdgeState next = state[q];
      place(next, z, q);
      children[q] = Child{q, next.completion(tables_.b_le[q])};
    }
    std::stable_sort(children, children + q_count,
                     [](const Child& a, const Child& b) {
                       return a.t_after < b.t_after;
                     });

    for (int c = 0; c < q_count; ++c) {
      const Child child = children[c];
      double bound = child.t_after;
      for (int q = 0; q < q_count; ++q) {
        if (q != child.q) bound = std::max(bound, completion[q]);
      }
      if (bound > best_makespan_) break;  // children sorted by t_after
      const double compute_after =
          compute_sum + tables_.at(tables_.w, z, child.q);
      const double load_bound =
          (compute_after + tables_.suffix_min_w[depth + 1]) /
          static_cast<double>(q_count);
      if (load_bound > best_makespan_) continue;
      EdgeState* next_level =
          &levels_[static_cast<std::size_t>(depth + 1) * q_count];
      for (int q = 0; q < q_count; ++q) next_level[q] = state[q];
      place(next_level[child.q], z, child.q);
      current_[z] = child.q;
      descend(depth + 1, compute_after);
      current_[z] = -1;
    }
  }

  void place(EdgeState& s, int z, int q) const {
    const double w = tables_.at(tables_.w, z, q);
    if (tables_.is_local[z * tables_.q_count + q]) {
      s.mu += w;
      s.out_loc = std::max(s.out_loc, tables_.at(tables_.out_t, z, q));
    } else {
      s.eta += w;
      s.in_max = std::max(s.in_max, tables_.at(tables_.in_t, z, q));
      s.out_in = std::max(s.out_in, tables_.at(tables_.out_t, z, q));
    }
  }

  struct Child {
    int q = 0;
    double t_after = 0.0;
  };

  const Instance& inst_;
  SearchTables tables_;
  std::optional<std::uint64_t> budget_;
  std::vector<EdgeState> levels_;
  std::vector<double> completion_scratch_;
  std::vector<Child> child_scratch_;
  std::vector<int> current_;
  Assignment best_;
  double best_makespan_ = std::numeric_limits<double>::infinity();
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExactResult solve_exact(const Instance& inst,
                        std::optional<std::uint64_t> node_budget) {
  if (inst.region_size < 1) {
    throw Error("solve_exact: instance has no schedulable edge");
  }
  ExactSearch search(inst, node_budget);
  return search.run();
}

}  // namespace corais
