// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "corais/domain.hpp"

namespace corais {

/// Selects how the per-edge completion time combines the result-transmission
/// terms. `standard` keeps the result shipping of locally sourced requests on
/// the local branch (alternative to b_le), which makes evaluation commute
/// exactly with folding the decision into the queues. `all_inbound` folds
/// every assigned request's result shipping into the inbound branch and uses
/// b_in as the final alternative.
enum class TqForm { standard, all_inbound };

/// Per-edge completion-time breakdown, all in seconds. `t` is the edge's
/// completion time; `makespan` below is the maximum over schedulable edges.
struct EdgeBreakdown {
  double mu = 0.0;       // local compute: queued + newly assigned local work
  double eta = 0.0;      // inbound compute: queued + newly transferred work
  double kappa1 = 0.0;   // longest pending inbound data transmission
  double kappa2 = 0.0;   // longest inbound-result transmission
  double out_local = 0.0;  // longest result transmission of local new work
  double t = 0.0;
};

struct ObjectiveBreakdown {
  std::vector<EdgeBreakdown> edges;
  double makespan = 0.0;
};

/// Evaluates the completion-time breakdown of `asg` on `inst`. Maxima over
/// empty sets are 0. Throws Error on an invalid assignment.
ObjectiveBreakdown evaluate(const Instance& inst, const Assignment& asg,
                            TqForm form = TqForm::standard);

/// Global reward of a decision: the negated makespan (the minimum over
/// per-edge local rewards -t_q).
double reward(const Instance& inst, const Assignment& asg,
              TqForm form = TqForm::standard);

/// Solution-quality ratio candidate/reference. Throws Error when the
/// reference makespan is not positive.
double gap(double candidate_makespan, double reference_makespan);

}  // namespace corais
