// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/instancegen.hpp"

#include <string>

#include "corais/rng.hpp"
#include "corais/stateval.hpp"

namespace corais {

namespace {

enum StreamTag : std::uint64_t {
  kCoords = 1,
  kPhi = 2,
  kReplicas = 3,
  kBacklogs = 4,
  kRequests = 5,
};

}  // namespace

void require_valid_config(const GenConfig& cfg) {
  if (cfg.n_edges < 1) throw Error("gen config: n_edges >= 1 required");
  if (cfg.region_size < 1 || cfg.region_size > cfg.n_edges) {
    throw Error("gen config: 1 <= region_size <= n_edges required");
  }
  if (cfg.n_requests < 0) throw Error("gen config: n_requests >= 0 required");
  if (cfg.replica_choices.empty()) {
    throw Error("gen config: replica_choices must be nonempty");
  }
  for (int r : cfg.replica_choices) {
    if (r < 1) throw Error("gen config: replica choices must be >= 1");
  }
  if (cfg.backlog_count_min < 0 ||
      cfg.backlog_count_max <= cfg.backlog_count_min) {
    throw Error("gen config: empty backlog count range");
  }
  if (!(cfg.input_size_max > cfg.input_size_min) ||
      cfg.input_size_min < 0.0) {
    throw Error("gen config: empty input size range");
  }
  if (!(cfg.output_size_max > cfg.output_size_min) ||
      cfg.output_size_min < 0.0) {
    throw Error("gen config: empty output size range");
  }
  if (cfg.phi_degree < 0) throw Error("gen config: phi_degree >= 0 required");
  if (!(cfg.phi_coeff_max > cfg.phi_coeff_min) || cfg.phi_coeff_min < 0.0) {
    throw Error("gen config: empty phi coefficient range");
  }
  if (!(cfg.c_t >= 0.0)) throw Error("gen config: c_t >= 0 required");
}

Instance generate(const GenConfig& cfg) {
  require_valid_config(cfg);
  const int n = cfg.n_edges;
  const int q_count = cfg.region_size;

  Instance inst;
  inst.region_size = q_count;
  inst.transmission_constant = cfg.c_t;

  Rng coords = substream(cfg.seed, kCoords);
  Rng phi = substream(cfg.seed, kPhi);
  Rng replicas = substream(cfg.seed, kReplicas);
  Rng backlog = substream(cfg.seed, kBacklogs);
  Rng requests = substream(cfg.seed, kRequests);

  for (int i = 0; i < n; ++i) {
    EdgeProfile e;
    e.id = i;
    e.coords.x = coords.next_open(0.0, 1.0);
    e.coords.y = coords.next_open(0.0, 1.0);
    e.phi_coeffs.resize(cfg.phi_degree + 1);
    for (double& c : e.phi_coeffs) {
      c = phi.next_open(cfg.phi_coeff_min, cfg.phi_coeff_max);
    }
    e.replica_count = cfg.replica_choices[replicas.next_index(
        static_cast<int>(cfg.replica_choices.size()))];
    inst.edges.push_back(std::move(e));
  }

  auto draw_local_item = [&](Rng& rng) {
    BacklogItem item;
    item.input_size = rng.next_open(cfg.input_size_min, cfg.input_size_max);
    item.output_size = rng.next_open(cfg.output_size_min, cfg.output_size_max);
    item.predicted_edge = rng.next_index(n);
    return item;
  };

  std::vector<EdgeBacklog> backlogs(q_count);
  for (int q = 0; q < q_count; ++q) {
    const int local_count =
        cfg.backlog_count_min +
        backlog.next_index(cfg.backlog_count_max - cfg.backlog_count_min);
    for (int i = 0; i < local_count; ++i) {
      backlogs[q].local.push_back(draw_local_item(backlog));
    }
    int transfer_count =
        cfg.backlog_count_min +
        backlog.next_index(cfg.backlog_count_max - cfg.backlog_count_min);
    if (q_count == 1) transfer_count = 0;  // no other edge to originate from
    for (int i = 0; i < transfer_count; ++i) {
      BacklogItem item = draw_local_item(backlog);
      int origin = backlog.next_index(q_count - 1);
      if (origin >= q) ++origin;  // uniform over [Q] minus the holder
      item.origin_edge = origin;
      backlogs[q].transfer_in.push_back(item);
    }
  }
  for (int q = 0; q < q_count; ++q) {
    inst.snapshots.push_back(evaluate_workload(
        inst.edges[q], backlogs[q].local, backlogs[q].transfer_in, cfg.c_t,
        inst.edges));
  }
  inst.backlogs = std::move(backlogs);

  for (int z = 0; z < cfg.n_requests; ++z) {
    RequestSpec r;
    r.id = z;
    r.source_edge = requests.next_index(q_count);
    r.predicted_edge = requests.next_index(n);
    r.input_size = requests.next_open(cfg.input_size_min, cfg.input_size_max);
    r.output_size =
        requests.next_open(cfg.output_size_min, cfg.output_size_max);
    inst.requests.push_back(r);
  }
  return inst;
}

Instance apply_decision(const Instance& inst, const Assignment& asg) {
  require_valid_assignment(inst, asg);
  Instance next = inst;

  std::vector<std::vector<BacklogItem>> new_local(inst.region_size);
  std::vector<std::vector<BacklogItem>> new_transfer(inst.region_size);
  for (int z = 0; z < inst.num_requests(); ++z) {
    const RequestSpec& r = inst.requests[z];
    const int exec = asg.exec_edge[z];
    BacklogItem item;
    item.input_size = r.input_size;
    item.output_size = r.output_size;
    item.predicted_edge = r.predicted_edge;
    if (exec == r.source_edge) {
      new_local[exec].push_back(item);
    } else {
      item.origin_edge = r.source_edge;
      new_transfer[exec].push_back(item);
    }
  }

  for (int q = 0; q < inst.region_size; ++q) {
    next.snapshots[q] = extend_snapshot(
        inst.snapshots[q], inst.edges[q], new_local[q], new_transfer[q],
        inst.transmission_constant, inst.edges);
    if (next.backlogs) {
      auto& bucket = (*next.backlogs)[q];
      bucket.local.insert(bucket.local.end(), new_local[q].begin(),
                          new_local[q].end());
      bucket.transfer_in.insert(bucket.transfer_in.end(),
                                new_transfer[q].begin(),
                                new_transfer[q].end());
    }
  }
  next.requests.clear();
  return next;
}

}  // namespace corais
