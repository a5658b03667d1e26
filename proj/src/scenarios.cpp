// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corais/decode.hpp"
#include "corais/model.hpp"
#include "corais/objective.hpp"
#include "corais/rng.hpp"
#include "corais/stateval.hpp"

namespace corais {

Scenario scenario_from_name(const std::string& name) {
  if (name == "lb") return Scenario::load_balance;
  if (name == "wp") return Scenario::workload_perception;
  if (name == "ha") return Scenario::heterogeneity;
  throw Error("unknown scenario '" + name + "' (expected lb, wp or ha)");
}

ScenarioSpec make_scenario(Scenario kind, std::uint64_t seed) {
  ScenarioSpec spec;
  Instance& inst = spec.instance;
  inst.region_size = kScenarioEdges;
  inst.transmission_constant = 3.0;

  Rng coords = substream(seed, 1);
  for (int i = 0; i < kScenarioEdges; ++i) {
    EdgeProfile e;
    e.id = i;
    e.coords.x = coords.next_open(0.0, 1.0);
    e.coords.y = coords.next_open(0.0, 1.0);
    e.phi_coeffs = {0.05, 0.5};
    e.replica_count = 2;
    inst.edges.push_back(e);
  }

  // Queue features stay inside the training distribution; only the axis the
  // scenario probes varies across edges.
  std::vector<double> c_le(kScenarioEdges, 4.0);
  if (kind == Scenario::workload_perception) {
    c_le = {12.0, 9.0, 6.0, 4.0, 2.0};  // burden order A > B > C > D > E
  }
  if (kind == Scenario::heterogeneity) {
    // Compute speed order E > D > C > B > A with equalized queue response.
    const double slopes[kScenarioEdges] = {0.9, 0.7, 0.5, 0.3, 0.1};
    for (int i = 0; i < kScenarioEdges; ++i) {
      inst.edges[i].phi_coeffs = {0.05, slopes[i]};
    }
  }
  for (int i = 0; i < kScenarioEdges; ++i) {
    WorkloadSnapshot s;
    s.c_le = c_le[i];
    s.c_in = 1.0;
    s.t_in = 0.3;
    s.b_le = 0.05;
    s.b_in = 0.05;
    inst.snapshots.push_back(s);
  }

  for (int z = 0; z < kScenarioRequests; ++z) {
    inst.requests.push_back({z, 0, 0, 0.5, 0.05});
  }

  for (int i = 0; i < kScenarioEdges; ++i) {
    const WorkloadSnapshot& s = inst.snapshots[i];
    spec.backlog_burden.push_back(std::max(s.t_in, s.c_le) +
                                  std::max(s.c_in + s.b_in, s.b_le));
    spec.compute_speed.push_back(
        1.0 / eval_phi(inst.edges[i].phi_coeffs, 0.5));
  }
  return spec;
}

CharacteristicResult run_characteristic(Scenario kind, const Checkpoint& ckpt,
                                        int trials, std::uint64_t seed,
                                        int decode_samples) {
  if (trials < 1) throw Error("run_characteristic: trials >= 1 required");
  ScenarioSpec spec = make_scenario(kind, seed);
  const Instance& inst = spec.instance;

  // The instance is fixed across trials; only the decode draws vary.
  ForwardPass pass = forward(ckpt.params, ckpt.config, inst);

  CharacteristicResult result;
  result.trials = trials;
  result.ereqn.assign(kScenarioEdges, 0.0);
  result.lcost.assign(kScenarioEdges, 0.0);
  const std::uint64_t decode_seed = substream(seed, 2).next_u64();
  for (int t = 0; t < trials; ++t) {
    auto decoded =
        decode_sampling(pass.probs, decode_samples, inst,
                        substream(decode_seed, t).next_u64());
    auto breakdown = evaluate(inst, decoded.assignment);
    for (int z = 0; z < inst.num_requests(); ++z) {
      result.ereqn[decoded.assignment.exec_edge[z]] += 1.0;
    }
    for (int q = 0; q < kScenarioEdges; ++q) {
      result.lcost[q] += breakdown.edges[q].t;
    }
  }
  for (int q = 0; q < kScenarioEdges; ++q) {
    result.ereqn[q] /= trials;
    result.lcost[q] /= trials;
  }
  return result;
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * (i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw Error("spearman: need two equally sized samples");
  }
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) {
    throw Error("spearman: constant ranks");
  }
  return cov / std::sqrt(va * vb);
}

double coefficient_of_variation(std::span<const double> values) {
  if (values.empty()) throw Error("coefficient_of_variation: empty sample");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (mean == 0.0) throw Error("coefficient_of_variation: zero mean");
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return std::sqrt(var) / mean;
}

}  // namespace corais
