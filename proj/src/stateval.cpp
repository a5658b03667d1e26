// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/stateval.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

namespace corais {

double eval_phi(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x + *it;
  }
  if (acc < 0.0) {
    throw Error("non-physical phi: value " + std::to_string(acc) +
                " at data size " + std::to_string(x));
  }
  return acc;
}

std::vector<double> fit_phi(std::span<const TimingSample> samples, int degree) {
  if (degree < 0) throw Error("fit_phi: degree must be nonnegative");
  std::set<double> distinct;
  for (const auto& s : samples) distinct.insert(s.data_size);
  if (static_cast<int>(distinct.size()) <= degree) {
    throw Error("insufficient support: " + std::to_string(distinct.size()) +
                " distinct data sizes for degree " + std::to_string(degree));
  }
  const int n = static_cast<int>(samples.size());
  const int m = degree + 1;
  Eigen::MatrixXd design(n, m);
  Eigen::VectorXd target(n);
  for (int i = 0; i < n; ++i) {
    double p = 1.0;
    for (int j = 0; j < m; ++j) {
      design(i, j) = p;
      p *= samples[i].data_size;
    }
    target(i) = samples[i].elapsed;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < m) {
    throw Error("insufficient support: rank-deficient design matrix");
  }
  Eigen::VectorXd sol = qr.solve(target);
  return std::vector<double>(sol.data(), sol.data() + m);
}

std::vector<TimingSample> parse_timing_csv(const std::string& text) {
  std::vector<TimingSample> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error("timing CSV line " + std::to_string(lineno) +
                  ": expected `data_size,elapsed`");
    }
    try {
      TimingSample s;
      s.data_size = std::stod(line.substr(0, comma));
      s.elapsed = std::stod(line.substr(comma + 1));
      out.push_back(s);
    } catch (const std::exception&) {
      if (lineno == 1) continue;  // header row
      throw Error("timing CSV line " + std::to_string(lineno) +
                  ": non-numeric field");
    }
  }
  return out;
}

WorkloadSnapshot extend_snapshot(WorkloadSnapshot base, const EdgeProfile& edge,
                                 std::span<const BacklogItem> new_local,
                                 std::span<const BacklogItem> new_transfer_in,
                                 double c_t,
                                 std::span<const EdgeProfile> all_edges) {
  const double replicas = static_cast<double>(edge.replica_count);
  auto coords_of = [&](int idx) -> const Coords& {
    if (idx < 0 || idx >= static_cast<int>(all_edges.size())) {
      throw Error("edge index " + std::to_string(idx) + " out of range");
    }
    return all_edges[idx].coords;
  };
  for (const auto& item : new_local) {
    base.c_le += eval_phi(edge.phi_coeffs, item.input_size) / replicas;
    base.b_le = std::max(
        base.b_le, c_t * item.output_size *
                       distance(edge.coords, coords_of(item.predicted_edge)));
  }
  for (const auto& item : new_transfer_in) {
    if (!item.origin_edge.has_value()) {
      throw Error("transfer-in item missing origin edge");
    }
    base.c_in += eval_phi(edge.phi_coeffs, item.input_size) / replicas;
    base.t_in = std::max(
        base.t_in, c_t * item.input_size *
                       distance(coords_of(*item.origin_edge), edge.coords));
    base.b_in = std::max(
        base.b_in, c_t * item.output_size *
                       distance(edge.coords, coords_of(item.predicted_edge)));
  }
  return base;
}

WorkloadSnapshot evaluate_workload(const EdgeProfile& edge,
                                   std::span<const BacklogItem> local_queue,
                                   std::span<const BacklogItem> transfer_in_queue,
                                   double c_t,
                                   std::span<const EdgeProfile> all_edges) {
  return extend_snapshot(WorkloadSnapshot{}, edge, local_queue,
                         transfer_in_queue, c_t, all_edges);
}

}  // namespace corais
