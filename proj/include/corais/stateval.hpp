// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "corais/domain.hpp"

namespace corais {

/// One observed (data size, processing time) pair used to fit phi.
struct TimingSample {
  double data_size = 0.0;
  double elapsed = 0.0;
};

/// Evaluates the polynomial sum_i coeffs[i] * x^i. Throws Error
/// ("non-physical phi") when the value comes out negative.
double eval_phi(std::span<const double> coeffs, double x);

/// Least-squares polynomial fit of elapsed ~ phi(data_size). Requires more
/// distinct data sizes than `degree`; otherwise throws Error
/// ("insufficient support"). Coefficients are returned lowest degree first.
std::vector<double> fit_phi(std::span<const TimingSample> samples, int degree);

/// Parses a two-column `data_size,elapsed` CSV document. A header row is
/// accepted and skipped.
std::vector<TimingSample> parse_timing_csv(const std::string& text);

/// Folds additional queue items into an existing snapshot of `edge`. Compute
/// features accumulate; transmission features take running maxima, so
/// extending a snapshot item by item equals evaluating the concatenated
/// queues from scratch.
WorkloadSnapshot extend_snapshot(WorkloadSnapshot base, const EdgeProfile& edge,
                                 std::span<const BacklogItem> new_local,
                                 std::span<const BacklogItem> new_transfer_in,
                                 double c_t,
                                 std::span<const EdgeProfile> all_edges);

/// Computes the five workload features of `edge` from its raw queues.
/// Maxima over empty queues are 0. Transfer-in items must carry an origin.
WorkloadSnapshot evaluate_workload(const EdgeProfile& edge,
                                   std::span<const BacklogItem> local_queue,
                                   std::span<const BacklogItem> transfer_in_queue,
                                   double c_t,
                                   std::span<const EdgeProfile> all_edges);

}  // namespace corais
