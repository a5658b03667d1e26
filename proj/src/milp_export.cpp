// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "corais/baselines.hpp"
#include "corais/stateval.hpp"

namespace corais {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string var_x(int z, int q) {
  return "x_" + std::to_string(z) + "_" + std::to_string(q);
}

// One `name: terms <= rhs` row. Terms accumulate as "coef var" pairs with
// explicit signs; zero coefficients are dropped.
class Row {
 public:
  explicit Row(std::string name) : name_(std::move(name)) {}

  Row& add(double coef, const std::string& var) {
    if (coef == 0.0) return *this;
    if (body_.empty()) {
      body_ = (coef < 0 ? "- " : "") + num(std::abs(coef)) + " " + var;
    } else {
      body_ += (coef < 0 ? " - " : " + ") + num(std::abs(coef)) + " " + var;
    }
    return *this;
  }

  std::string le(double rhs) const {
    return " " + name_ + ": " + (body_.empty() ? "0 T" : body_) +
           " <= " + num(rhs) + "\n";
  }

  std::string eq(double rhs) const {
    return " " + name_ + ": " + body_ + " = " + num(rhs) + "\n";
  }

 private:
  std::string name_;
  std::string body_;
};

}  // namespace

std::string export_milp(const Instance& inst, TqForm form) {
  const int q_count = inst.region_size;
  const int z_count = inst.num_requests();
  const double ct = inst.transmission_constant;

  auto w = [&](int z, int q) {
    return eval_phi(inst.edges[q].phi_coeffs, inst.requests[z].input_size) /
           static_cast<double>(inst.edges[q].replica_count);
  };
  auto in_t = [&](int z, int q) {
    return ct * inst.requests[z].input_size *
           distance(inst.edges[inst.requests[z].source_edge].coords,
                    inst.edges[q].coords);
  };
  auto out_t = [&](int z, int q) {
    return ct * inst.requests[z].output_size *
           distance(inst.edges[q].coords,
                    inst.edges[inst.requests[z].predicted_edge].coords);
  };
  auto is_local = [&](int z, int q) {
    return inst.requests[z].source_edge == q;
  };

  std::ostringstream out;
  out << "\\ multi-edge request scheduling, min-max completion time\n";
  out << "\\ edges=" << q_count << " requests=" << z_count << " form="
      << (form == TqForm::standard ? "standard" : "all_inbound") << "\n";
  out << "Minimize\n obj: T\nSubject To\n";

  for (int z = 0; z < z_count; ++z) {
    Row row("assign_" + std::to_string(z));
    for (int q = 0; q < q_count; ++q) row.add(1.0, var_x(z, q));
    out << row.eq(1.0);
  }

  for (int q = 0; q < q_count; ++q) {
    const WorkloadSnapshot& s = inst.snapshots[q];
    const std::string a_q = "A_" + std::to_string(q);
    const std::string b_q = "B_" + std::to_string(q);
    const std::string tag = std::to_string(q);

    // A_q >= mu_q: local compute plus queued local compute.
    Row mu("mu_" + tag);
    for (int z = 0; z < z_count; ++z) {
      if (is_local(z, q)) mu.add(w(z, q), var_x(z, q));
    }
    mu.add(-1.0, a_q);
    out << mu.le(-s.c_le);

    // A_q >= t_in and per-request inbound transmissions.
    out << Row("tin_" + tag).add(-1.0, a_q).le(-s.t_in);
    for (int z = 0; z < z_count; ++z) {
      if (is_local(z, q)) continue;
      const double coef = in_t(z, q);
      if (coef == 0.0) continue;
      out << Row("kin_" + tag + "_" + std::to_string(z))
                 .add(coef, var_x(z, q))
                 .add(-1.0, a_q)
                 .le(0.0);
    }

    // B_q rows: the inbound-compute sum eta(x) recurs in each lower bound.
    auto eta_terms = [&](Row& row) {
      for (int z = 0; z < z_count; ++z) {
        if (!is_local(z, q)) row.add(w(z, q), var_x(z, q));
      }
    };

    if (form == TqForm::standard) {
      Row floor_row("bin_" + tag);
      eta_terms(floor_row);
      floor_row.add(-1.0, b_q);
      out << floor_row.le(-(s.c_in + s.b_in));
      for (int z = 0; z < z_count; ++z) {
        if (is_local(z, q)) {
          const double coef = out_t(z, q);
          if (coef == 0.0) continue;
          out << Row("bloc_" + tag + "_" + std::to_string(z))
                     .add(coef, var_x(z, q))
                     .add(-1.0, b_q)
                     .le(0.0);
        } else {
          if (out_t(z, q) == 0.0) continue;
          Row row("bout_" + tag + "_" + std::to_string(z));
          for (int zz = 0; zz < z_count; ++zz) {
            if (is_local(zz, q)) continue;
            const double coef = w(zz, q) + (zz == z ? out_t(z, q) : 0.0);
            row.add(coef, var_x(zz, q));
          }
          row.add(-1.0, b_q);
          out << row.le(-s.c_in);
        }
      }
      out << Row("ble_" + tag).add(-1.0, b_q).le(-s.b_le);
    } else {
      Row floor_row("bin_" + tag);
      eta_terms(floor_row);
      floor_row.add(-1.0, b_q);
      out << floor_row.le(-(s.c_in + s.b_in));
      for (int z = 0; z < z_count; ++z) {
        if (out_t(z, q) == 0.0) continue;
        Row row("bout_" + tag + "_" + std::to_string(z));
        for (int zz = 0; zz < z_count; ++zz) {
          if (is_local(zz, q)) continue;
          row.add(w(zz, q) + (zz == z ? out_t(z, q) : 0.0), var_x(zz, q));
        }
        if (is_local(z, q)) row.add(out_t(z, q), var_x(z, q));
        row.add(-1.0, b_q);
        out << row.le(-s.c_in);
      }
      out << Row("bfloor_" + tag).add(-1.0, b_q).le(-s.b_in);
    }

    out << Row("tsum_" + tag)
               .add(1.0, a_q)
               .add(1.0, b_q)
               .add(-1.0, "T")
               .le(0.0);
  }

  out << "Binary\n";
  for (int z = 0; z < z_count; ++z) {
    out << " ";
    for (int q = 0; q < q_count; ++q) out << var_x(z, q) << " ";
    out << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace corais
