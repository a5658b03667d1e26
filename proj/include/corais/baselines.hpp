// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "corais/domain.hpp"
#include "corais/objective.hpp"

namespace corais {

/// Executes every request at its source edge.
Assignment schedule_local(const Instance& inst);

/// Executes every request at its predicted edge, falling back to the source
/// edge when the prediction lies outside the control region.
Assignment schedule_predicted(const Instance& inst);

/// Best of k uniformly drawn assignments by makespan; deterministic in seed.
Assignment schedule_random(const Instance& inst, int k, std::uint64_t seed);

struct ExactResult {
  Assignment assignment;
  double makespan = 0.0;
  std::uint64_t nodes = 0;
};

/// Raised when the node budget runs out; carries the best incumbent found.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, ExactResult incumbent)
      : Error(what), incumbent_(std::move(incumbent)) {}
  const ExactResult& incumbent() const { return incumbent_; }

 private:
  ExactResult incumbent_;
};

/// Depth-first branch and bound over the Q^Z assignment space. Returns a
/// minimum-makespan assignment; ties break toward the lexicographically
/// smallest exec_edge vector. The bound combines the partial per-edge
/// completion times with a replica-averaged load bound on the remaining
/// requests, both admissible.
ExactResult solve_exact(const Instance& inst,
                        std::optional<std::uint64_t> node_budget = {});

/// Emits the scheduling problem as an exact mixed-integer program in LP text
/// format: binaries x_z_q, continuous per-edge phase times A_q/B_q and the
/// makespan T, with every max expressed as lower bounds on a minimized
/// variable.
std::string export_milp(const Instance& inst, TqForm form = TqForm::standard);

}  // namespace corais
