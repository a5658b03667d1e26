// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/domain.hpp"

#include <cmath>
#include <string>

namespace corais {

double distance(const Coords& a, const Coords& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

namespace {

bool finite(double v) { return std::isfinite(v); }

std::optional<Violation> check_phi_nonnegative(const Instance& inst) {
  // phi must be nonnegative over the instance's data-size range; it is
  // probed at 0 and at every input size present in the instance.
  std::vector<double> probes{0.0};
  for (const auto& r : inst.requests) probes.push_back(r.input_size);
  if (inst.backlogs) {
    for (const auto& eb : *inst.backlogs) {
      for (const auto& it : eb.local) probes.push_back(it.input_size);
      for (const auto& it : eb.transfer_in) probes.push_back(it.input_size);
    }
  }
  for (const auto& e : inst.edges) {
    for (double x : probes) {
      double acc = 0.0;
      for (auto it = e.phi_coeffs.rbegin(); it != e.phi_coeffs.rend(); ++it) {
        acc = acc * x + *it;
      }
      if (!(acc >= 0.0)) {
        return Violation{"phi(x) >= 0 over the data-size range",
                         "edge " + std::to_string(e.id)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate_instance(const Instance& inst) {
  const int n = inst.num_edges();
  const int q = inst.region_size;
  if (q < 1 || q > n) {
    return Violation{"1 <= region_size <= n_edges", "instance"};
  }
  if (static_cast<int>(inst.snapshots.size()) != q) {
    return Violation{"snapshots length = region_size", "instance"};
  }
  if (!finite(inst.transmission_constant) || inst.transmission_constant < 0) {
    return Violation{"transmission constant >= 0", "instance"};
  }
  for (int i = 0; i < n; ++i) {
    const auto& e = inst.edges[i];
    const std::string subject = "edge " + std::to_string(i);
    if (!finite(e.coords.x) || !finite(e.coords.y)) {
      return Violation{"coordinates finite", subject};
    }
    if (e.phi_coeffs.empty()) {
      return Violation{"phi_coeffs nonempty", subject};
    }
    for (double c : e.phi_coeffs) {
      if (!finite(c)) return Violation{"phi_coeffs finite", subject};
    }
    if (e.replica_count < 1) {
      return Violation{"replica_count >= 1", subject};
    }
  }
  for (int i = 0; i < q; ++i) {
    const auto& s = inst.snapshots[i];
    const std::string subject = "snapshot " + std::to_string(i);
    for (double v : {s.c_le, s.c_in, s.t_in, s.b_le, s.b_in}) {
      if (!finite(v) || v < 0.0) {
        return Violation{"workload features >= 0", subject};
      }
    }
  }
  for (int z = 0; z < inst.num_requests(); ++z) {
    const auto& r = inst.requests[z];
    const std::string subject = "request " + std::to_string(z);
    if (!(r.input_size > 0.0) || !finite(r.input_size)) {
      return Violation{"input_size > 0", subject};
    }
    if (!(r.output_size >= 0.0) || !finite(r.output_size)) {
      return Violation{"output_size >= 0", subject};
    }
    if (r.source_edge < 0 || r.source_edge >= q) {
      return Violation{"source outside control region", subject};
    }
    if (r.predicted_edge < 0 || r.predicted_edge >= n) {
      return Violation{"predicted_edge < n_edges", subject};
    }
  }
  if (inst.backlogs) {
    if (static_cast<int>(inst.backlogs->size()) != q) {
      return Violation{"backlogs length = region_size", "instance"};
    }
    for (int i = 0; i < q; ++i) {
      const auto& eb = (*inst.backlogs)[i];
      const std::string subject = "backlog " + std::to_string(i);
      for (const auto& it : eb.local) {
        if (it.origin_edge.has_value()) {
          return Violation{"local items carry no origin_edge", subject};
        }
        if (!(it.input_size > 0.0)) return Violation{"input_size > 0", subject};
        if (!(it.output_size >= 0.0)) {
          return Violation{"output_size >= 0", subject};
        }
        if (it.predicted_edge < 0 || it.predicted_edge >= n) {
          return Violation{"predicted_edge < n_edges", subject};
        }
      }
      for (const auto& it : eb.transfer_in) {
        if (!it.origin_edge.has_value()) {
          return Violation{"transfer-in items carry origin_edge", subject};
        }
        if (*it.origin_edge == i) {
          return Violation{"transfer-in origin differs from holder", subject};
        }
        if (*it.origin_edge < 0 || *it.origin_edge >= q) {
          return Violation{"transfer-in origin inside control region", subject};
        }
        if (!(it.input_size > 0.0)) return Violation{"input_size > 0", subject};
        if (!(it.output_size >= 0.0)) {
          return Violation{"output_size >= 0", subject};
        }
        if (it.predicted_edge < 0 || it.predicted_edge >= n) {
          return Violation{"predicted_edge < n_edges", subject};
        }
      }
    }
  }
  return check_phi_nonnegative(inst);
}

void require_valid_assignment(const Instance& inst, const Assignment& asg) {
  if (asg.size() != inst.num_requests()) {
    throw Error("assignment length " + std::to_string(asg.size()) +
                " does not match request count " +
                std::to_string(inst.num_requests()));
  }
  for (int z = 0; z < asg.size(); ++z) {
    const int q = asg.exec_edge[z];
    if (q < 0 || q >= inst.region_size) {
      throw Error("assignment entry " + std::to_string(z) +
                  " targets edge " + std::to_string(q) +
                  " outside the control region");
    }
  }
}

}  // namespace corais
