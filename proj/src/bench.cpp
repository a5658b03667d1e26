// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "corais/objective.hpp"
#include "corais/rng.hpp"

namespace corais {

namespace {

std::string fmt(double v, const char* spec = "%.17g") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

std::vector<RunRecord> run_suite(std::span<const Method> methods,
                                 std::span<const Instance> instances,
                                 std::uint64_t seed) {
  std::vector<RunRecord> records;
  records.reserve(methods.size() * instances.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    const std::uint64_t method_seed = substream(seed, m).next_u64();
    for (std::size_t i = 0; i < instances.size(); ++i) {
      RunRecord rec;
      rec.method = methods[m].name;
      rec.instance_id = static_cast<int>(i);
      rec.seed = substream(method_seed, i).next_u64();
      try {
        const auto start = std::chrono::steady_clock::now();
        Assignment asg = methods[m].schedule(instances[i], rec.seed);
        rec.decision_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        rec.makespan = evaluate(instances[i], asg).makespan;
      } catch (const std::exception& e) {
        rec.status = std::string("error: ") + e.what();
        rec.makespan = std::numeric_limits<double>::quiet_NaN();
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<MethodMetrics> summarize(std::span<const RunRecord> records,
                                     const std::string& reference_method) {
  std::map<int, double> reference;
  for (const auto& r : records) {
    if (r.method == reference_method && r.status == "ok") {
      reference[r.instance_id] = r.makespan;
    }
  }
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RunRecord*>> by_method;
  for (const auto& r : records) {
    if (!by_method.count(r.method)) order.push_back(r.method);
    by_method[r.method].push_back(&r);
  }
  std::vector<MethodMetrics> out;
  for (const auto& name : order) {
    auto rows = by_method[name];
    std::sort(rows.begin(), rows.end(),
              [](const RunRecord* a, const RunRecord* b) {
                return a->instance_id < b->instance_id;
              });
    MethodMetrics m;
    m.method = name;
    double gap_sum = 0, time_sum = 0, time_sq = 0, cost_sum = 0;
    for (const RunRecord* r : rows) {
      ++m.rows;
      if (r->status != "ok") {
        ++m.failures;
        continue;
      }
      auto ref = reference.find(r->instance_id);
      if (ref == reference.end()) {
        throw Error("summarize: no reference makespan for instance " +
                    std::to_string(r->instance_id));
      }
      gap_sum += gap(r->makespan, ref->second);
      time_sum += r->decision_seconds;
      time_sq += r->decision_seconds * r->decision_seconds;
      cost_sum += r->makespan;
    }
    const int ok = m.rows - m.failures;
    if (ok > 0) {
      m.gap_m = gap_sum / ok;
      m.time_m = time_sum / ok;
      const double var = std::max(0.0, time_sq / ok - m.time_m * m.time_m);
      m.time_s = std::sqrt(var);
      m.cost_m = cost_sum / ok;
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::string records_to_csv(std::span<const RunRecord> records) {
  std::ostringstream out;
  out << "method,instance,makespan,decision_seconds,seed,status\n";
  for (const auto& r : records) {
    out << r.method << ',' << r.instance_id << ',' << fmt(r.makespan) << ','
        << fmt(r.decision_seconds, "%.6f") << ',' << r.seed << ',' << r.status
        << '\n';
  }
  return out.str();
}

std::string metrics_to_csv(std::span<const MethodMetrics> metrics) {
  std::ostringstream out;
  out << "method,gap_m,time_m,time_s,cost_m\n";
  for (const auto& m : metrics) {
    out << m.method << ',' << fmt(m.gap_m) << ',' << fmt(m.time_m, "%.6f")
        << ',' << fmt(m.time_s, "%.6f") << ',' << fmt(m.cost_m) << '\n';
  }
  return out.str();
}

std::string metrics_to_table(std::span<const MethodMetrics> metrics) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-18s %10s %10s %10s %12s\n", "method",
                "Gap-M", "Time-M", "Time-S", "Cost-M");
  out << line;
  out << std::string(64, '-') << '\n';
  for (const auto& m : metrics) {
    std::snprintf(line, sizeof(line), "%-18s %10.4f %10.4f %10.4f %12.4f\n",
                  m.method.c_str(), m.gap_m, m.time_m, m.time_s, m.cost_m);
    out << line;
  }
  return out.str();
}

std::vector<MethodMetrics> parse_metrics_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "method,gap_m,time_m,time_s,cost_m") {
    throw Error("metrics csv: unexpected header");
  }
  std::vector<MethodMetrics> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    MethodMetrics m;
    std::string field;
    std::getline(row, m.method, ',');
    std::getline(row, field, ',');
    m.gap_m = std::stod(field);
    std::getline(row, field, ',');
    m.time_m = std::stod(field);
    std::getline(row, field, ',');
    m.time_s = std::stod(field);
    std::getline(row, field, ',');
    m.cost_m = std::stod(field);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace corais
