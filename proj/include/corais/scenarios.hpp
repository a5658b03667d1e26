// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corais/checkpoint.hpp"
#include "corais/domain.hpp"

namespace corais {

/// Characteristic-validation scenario families. Each builds a five-edge
/// control region receiving one batch of identical requests at edge A:
///   load_balance         homogeneous edges, identical queue states;
///   workload_perception  homogeneous edges, queue burden A > B > C > D > E;
///   heterogeneity        compute speed E > D > C > B > A, equal burdens.
enum class Scenario { load_balance, workload_perception, heterogeneity };

Scenario scenario_from_name(const std::string& name);  // "lb" | "wp" | "ha"

struct ScenarioSpec {
  Instance instance;
  std::vector<double> backlog_burden;  // per-edge queue response time
  std::vector<double> compute_speed;   // per-edge 1 / phi(reference size)
};

inline constexpr int kScenarioEdges = 5;
inline constexpr int kScenarioRequests = 100;

ScenarioSpec make_scenario(Scenario kind, std::uint64_t seed);

struct CharacteristicResult {
  std::vector<double> ereqn;  // mean executed-request count per edge
  std::vector<double> lcost;  // mean per-edge response time
  int trials = 0;
};

/// Runs `trials` independent sampling decodes of the checkpointed scheduler
/// on the scenario instance and aggregates per-edge means.
CharacteristicResult run_characteristic(Scenario kind, const Checkpoint& ckpt,
                                        int trials, std::uint64_t seed,
                                        int decode_samples = 1000);

/// Spearman rank correlation with average ranks on ties.
double spearman(std::span<const double> a, std::span<const double> b);

/// Standard deviation divided by the mean.
double coefficient_of_variation(std::span<const double> values);

}  // namespace corais
