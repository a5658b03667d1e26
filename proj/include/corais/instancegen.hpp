// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "corais/domain.hpp"

namespace corais {

/// Random-instance recipe. Edge coordinates are uniform in the unit square,
/// phi coefficients and request sizes come from the configured open
/// intervals, backlog queue lengths are uniform integers in
/// [backlog_count_min, backlog_count_max).
struct GenConfig {
  int n_edges = 10;
  int region_size = 5;
  int n_requests = 50;
  std::uint64_t seed = 0;
  double c_t = 3.0;
  std::vector<int> replica_choices = {1, 2, 3, 4};
  int backlog_count_min = 0;
  int backlog_count_max = 100;
  double input_size_min = 0.0;
  double input_size_max = 1.0;
  double output_size_min = 0.0;
  double output_size_max = 0.1;
  int phi_degree = 1;
  double phi_coeff_min = 0.0;
  double phi_coeff_max = 1.0;
};

/// Throws Error when the configuration is unusable (empty ranges, region
/// larger than the system, ...).
void require_valid_config(const GenConfig& cfg);

/// Generates one instance, deterministically in cfg.seed. Draws are split
/// into purpose-tagged substreams (coordinates, phi, replicas, backlogs,
/// requests) so adding fields never perturbs earlier streams.
Instance generate(const GenConfig& cfg);

/// Applies a scheduling decision as a queue transition: requests executed at
/// their source join that edge's local queue, the rest join the executor's
/// transfer-in queue with their source as origin. Snapshots are extended
/// accordingly and the request list is emptied.
Instance apply_decision(const Instance& inst, const Assignment& asg);

}  // namespace corais
