// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "corais/domain.hpp"

namespace corais {

/// One scheduling call: method on instance, with the makespan of the
/// returned decision and the wall-clock of the call itself (instance
/// loading excluded). Failures are recorded per row; the suite continues.
struct RunRecord {
  std::string method;
  int instance_id = 0;
  double makespan = 0.0;
  double decision_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string status = "ok";
};

struct Method {
  std::string name;
  std::function<Assignment(const Instance&, std::uint64_t seed)> schedule;
};

/// Runs every method on every instance (rows ordered method-major). Row
/// seeds derive from (master seed, method index, instance index).
std::vector<RunRecord> run_suite(std::span<const Method> methods,
                                 std::span<const Instance> instances,
                                 std::uint64_t seed);

struct MethodMetrics {
  std::string method;
  double gap_m = 0.0;   // mean makespan / reference makespan
  double time_m = 0.0;  // mean decision seconds
  double time_s = 0.0;  // standard deviation of decision seconds
  double cost_m = 0.0;  // mean makespan, seconds
  int rows = 0;
  int failures = 0;
};

/// Aggregates records per method against `reference_method`. Order of the
/// input records does not matter; throws Error when the reference row of
/// any instance is missing or failed.
std::vector<MethodMetrics> summarize(std::span<const RunRecord> records,
                                     const std::string& reference_method);

std::string records_to_csv(std::span<const RunRecord> records);
std::string metrics_to_csv(std::span<const MethodMetrics> metrics);
std::string metrics_to_table(std::span<const MethodMetrics> metrics);

/// Parses the document produced by metrics_to_csv.
std::vector<MethodMetrics> parse_metrics_csv(const std::string& text);

}  // namespace corais
