// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace corais {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Coords {
  double x = 0.0;
  double y = 0.0;
};

/// Euclidean distance between two planar coordinates (length units).
double distance(const Coords& a, const Coords& b);

/// Static description of one edge. The computation-time function phi maps a
/// data size to seconds and is stored as polynomial coefficients, lowest
/// degree first. `replica_count` is the number of independent service
/// replicas that process work in parallel.
struct EdgeProfile {
  int id = 0;
  Coords coords;
  std::vector<double> phi_coeffs;
  int replica_count = 1;
};

/// The five dynamic workload features of one edge at a scheduling round,
/// all in seconds: compute backlog in the local-execution queue (c_le),
/// compute backlog in the transfer-in queue (c_in), pending inbound data
/// transmission (t_in), pending result transmission for local-queue items
/// (b_le) and for transfer-in items (b_in).
struct WorkloadSnapshot {
  double c_le = 0.0;
  double c_in = 0.0;
  double t_in = 0.0;
  double b_le = 0.0;
  double b_in = 0.0;
};

/// One newly arrived request awaiting scheduling. `source_edge` indexes the
/// schedulable edge the client submitted to; `predicted_edge` indexes the
/// edge (possibly outside the control region) the results must be shipped to.
struct RequestSpec {
  int id = 0;
  int source_edge = 0;
  int predicted_edge = 0;
  double input_size = 0.0;
  double output_size = 0.0;
};

/// A previously accepted request sitting in an edge's queues. Items in a
/// local-execution queue carry no origin; items in a transfer-in queue carry
/// the schedulable edge they are being shipped from.
struct BacklogItem {
  double input_size = 0.0;
  double output_size = 0.0;
  std::optional<int> origin_edge;
  int predicted_edge = 0;
};

struct EdgeBacklog {
  std::vector<BacklogItem> local;
  std::vector<BacklogItem> transfer_in;
};

/// One scheduling round: N edges of which the first `region_size` are
/// schedulable (the rest are mobility destinations only), their workload
/// snapshots, and the batch of new requests. Raw queues are kept when the
/// snapshots were derived from them.
struct Instance {
  std::vector<EdgeProfile> edges;
  int region_size = 0;
  double transmission_constant = 0.0;
  std::vector<WorkloadSnapshot> snapshots;
  std::vector<RequestSpec> requests;
  std::optional<std::vector<EdgeBacklog>> backlogs;

  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_schedulable() const { return region_size; }
  int num_requests() const { return static_cast<int>(requests.size()); }
};

/// Dense encoding of the permutation matrix X: exec_edge[z] is the
/// schedulable edge request z is dispatched to.
struct Assignment {
  std::vector<int> exec_edge;

  int size() const { return static_cast<int>(exec_edge.size()); }
};

/// First violated instance invariant; violations are data, not faults.
struct Violation {
  std::string rule;
  std::string subject;

  std::string describe() const { return subject + ": " + rule; }
};

/// Returns the first violated invariant, or nullopt when the instance is
/// well formed.
std::optional<Violation> validate_instance(const Instance& inst);

/// Throws Error if the assignment does not match the instance (wrong length
/// or an execution edge outside the control region).
void require_valid_assignment(const Instance& inst, const Assignment& asg);

}  // namespace corais
