// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails. Heavier stages (training, the exact
// reference solves) run once and are shared.
//
// Environment:
//   CORAIS_CLI         path to the corais CLI binary (criterion 9)
//   CORAIS_MILP_CHECK  path to the external-solver check script (criterion 2)

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "corais/baselines.hpp"
#include "corais/bench.hpp"
#include "corais/decode.hpp"
#include "corais/instance_io.hpp"
#include "corais/instancegen.hpp"
#include "corais/rng.hpp"
#include "corais/scenarios.hpp"
#include "corais/training.hpp"
#include "support/finite_diff.hpp"
#include "support/oracle.hpp"

using namespace corais;

namespace {

struct Failure {
  std::string detail;
};

[[noreturn]] void fail(const std::string& detail) { throw Failure{detail}; }

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

ModelConfig desk_model() {
  ModelConfig cfg;
  cfg.d_h = 64;
  cfg.edge_layers = 2;
  cfg.request_layers = 2;
  cfg.heads = 4;
  cfg.ff_hidden = 256;
  return cfg;
}

ModelConfig tiny_model() {
  ModelConfig cfg;
  cfg.d_h = 8;
  cfg.edge_layers = 1;
  cfg.request_layers = 1;
  cfg.heads = 2;
  cfg.ff_hidden = 16;
  return cfg;
}

GenConfig desk_gen() {
  GenConfig gen;
  gen.n_edges = 6;
  gen.region_size = 3;
  gen.n_requests = 20;
  return gen;
}

// Shared heavyweight artifacts, built on first use.
struct Context {
  std::optional<TrainResult> training;
  std::vector<Instance> heldout;
  std::vector<double> exact_makespans;

  const TrainResult& trained() {
    if (!training) {
      TrainConfig cfg;
      cfg.batch_size = 32;
      cfg.samples_per_instance = 16;
      cfg.lr = 2e-4;
      cfg.total_batches = 2000;
      cfg.gen = desk_gen();
      cfg.model = desk_model();
      cfg.seed = 20260809;
      cfg.eval_every = 200;
      cfg.eval_instances = 50;
      cfg.eval_samples = 128;
      std::fprintf(stderr,
                   "... training the desk-scale scheduler (2000 batches)\n");
      training = train(cfg);
    }
    return *training;
  }

  void build_heldout() {
    if (!heldout.empty()) return;
    std::fprintf(stderr, "... solving 100 held-out instances exactly\n");
    for (int i = 0; i < 100; ++i) {
      GenConfig gen = desk_gen();
      gen.seed = substream(424242, static_cast<std::uint64_t>(i)).next_u64();
      heldout.push_back(generate(gen));
      exact_makespans.push_back(solve_exact(heldout.back()).makespan);
    }
  }
};

// --- criterion 1 ---

std::string criterion_objective_correctness() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  long long checked = 0;
  for (int i = 0; i < 200; ++i) {
    const int q = 1 + (i % 3);
    const int z = i % 7;
    GenConfig gen;
    gen.n_edges = q + 2;
    gen.region_size = q;
    gen.n_requests = z;
    gen.seed = substream(1001, static_cast<std::uint64_t>(i)).next_u64();
    const Instance inst = generate(gen);
    std::vector<int> exec(z, 0);
    while (true) {
      const double ours = evaluate(inst, Assignment{exec}).makespan;
      const double ref = oracle::makespan(inst, exec);
      const double rel =
          std::abs(ours - ref) / std::max(1e-12, std::abs(ref));
      worst = std::max(worst, rel);
      ++checked;
      if (rel > 1e-9) {
        fail("relative error " + fmt("%.3g", rel) + " on instance " +
             std::to_string(i));
      }
      int pos = z - 1;
      while (pos >= 0 && exec[pos] == q - 1) {
        exec[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++exec[pos];
    }
  }
  const double secs = elapsed_since(start);
  if (secs >= 60.0) fail("took " + fmt("%.1f", secs) + "s (budget 60s)");
  return std::to_string(checked) + " assignments over 200 instances, max rel err " +
         fmt("%.2e", worst) + ", " + fmt("%.1f", secs) + "s";
}

// --- criterion 2 ---

std::string criterion_exact_solver() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Instance> instances;
  for (int i = 0; i < 100; ++i) {
    GenConfig gen;
    gen.n_edges = 5;
    gen.region_size = 3;
    gen.n_requests = 6;
    gen.seed = substream(2002, static_cast<std::uint64_t>(i)).next_u64();
    instances.push_back(generate(gen));
    const auto res = solve_exact(instances.back());
    const auto [vec, best] = oracle::best_by_enumeration(instances.back());
    if (res.assignment.exec_edge != vec) {
      fail("assignment mismatch vs enumeration on instance " +
           std::to_string(i));
    }
    if (std::abs(res.makespan - best) > 1e-9 * std::max(1.0, best)) {
      fail("makespan mismatch vs enumeration on instance " +
           std::to_string(i));
    }
  }

  std::string milp_note = "external MILP check skipped (no solver)";
  const char* script = std::getenv("CORAIS_MILP_CHECK");
  if (script != nullptr &&
      std::system("python3 -c 'import scipy.optimize' >/dev/null 2>&1") == 0) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "corais_acceptance_lp";
    fs::create_directories(dir);
    std::string command = std::string("python3 \"") + script + "\"";
    for (int i = 0; i < 50; ++i) {
      const fs::path lp = dir / ("inst_" + std::to_string(i) + ".lp");
      std::ofstream out(lp);
      out << export_milp(instances[i]);
      command += " \"" + lp.string() + "\"";
    }
    std::FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) fail("cannot launch the external solver script");
    std::vector<double> optima;
    char line[512];
    while (std::fgets(line, sizeof(line), pipe) != nullptr) {
      std::istringstream row(line);
      std::string path;
      double value;
      if (row >> path >> value) optima.push_back(value);
    }
    const int status = pclose(pipe);
    if (status != 0 || optima.size() != 50) {
      fail("external solver script failed (status " + std::to_string(status) +
           ", " + std::to_string(optima.size()) + " results)");
    }
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double exact = solve_exact(instances[i]).makespan;
      const double diff = std::abs(optima[i] - exact);
      worst = std::max(worst, diff);
      if (diff > 1e-6) {
        fail("external MILP optimum differs by " + fmt("%.3g", diff) +
             " on instance " + std::to_string(i));
      }
    }
    milp_note = "external MILP (HiGHS via scipy) matched on 50, max diff " +
                fmt("%.2e", worst);
    fs::remove_all(dir);
  }
  const double secs = elapsed_since(start);
  if (secs >= 300.0) fail("took " + fmt("%.1f", secs) + "s (budget 300s)");
  return "100 instances equal plain enumeration; " + milp_note + ", " +
         fmt("%.1f", secs) + "s";
}

// --- criterion 3 ---

std::string criterion_gradient_fidelity() {
  const auto start = std::chrono::steady_clock::now();
  const ModelConfig cfg = tiny_model();
  GenConfig gen;
  gen.n_edges = 5;
  gen.region_size = 3;
  gen.n_requests = 4;
  gen.seed = 3003;
  const Instance inst = generate(gen);
  auto params = ModelParams::init(cfg, 77);

  // Forward-policy losses: chosen-assignment log probability and entropy.
  const std::vector<int> asg = {1, 0, 2, 1};
  auto logprob_loss = [&](const ModelParams& p) {
    const auto pass = forward(p, cfg, inst);
    double loss = 0.0;
    for (int z = 0; z < 4; ++z) loss += std::log(pass.probs(asg[z], z));
    return loss;
  };
  auto entropy_loss = [&](const ModelParams& p) {
    return policy_entropy(forward(p, cfg, inst).probs);
  };
  auto pass = forward(params, cfg, inst);
  Eigen::MatrixXd d_logprob = Eigen::MatrixXd::Zero(3, 4);
  for (int z = 0; z < 4; ++z) {
    d_logprob(asg[z], z) = 1.0 / pass.probs(asg[z], z);
  }
  Eigen::MatrixXd d_entropy(3, 4);
  for (int z = 0; z < 4; ++z) {
    for (int q = 0; q < 3; ++q) {
      d_entropy(q, z) = -(std::log(pass.probs(q, z)) + 1.0);
    }
  }
  const double err_logprob = testfd::max_relative_gradient_error(
      params, backward(params, cfg, pass, d_logprob), logprob_loss);
  const double err_entropy = testfd::max_relative_gradient_error(
      params, backward(params, cfg, pass, d_entropy), entropy_loss);

  std::vector<Instance> batch = {inst};
  {
    GenConfig gen2 = gen;
    gen2.seed = 3004;
    batch.push_back(generate(gen2));
  }
  const std::uint64_t sample_seed = 913;
  auto bl = batch_loss(params, cfg, batch, 4, sample_seed, 10.0, 0.5);
  auto batch_scalar = [&](const ModelParams& p) {
    return batch_loss(p, cfg, batch, 4, sample_seed, 10.0, 0.5).loss;
  };
  const double err_batch =
      testfd::max_relative_gradient_error(params, bl.grads, batch_scalar);

  const double worst = std::max({err_logprob, err_entropy, err_batch});
  if (worst > 1e-4) {
    fail("max relative gradient error " + fmt("%.3g", worst));
  }
  const double secs = elapsed_since(start);
  if (secs >= 60.0) fail("took " + fmt("%.1f", secs) + "s (budget 60s)");
  return "log-prob " + fmt("%.2e", err_logprob) + ", entropy " +
         fmt("%.2e", err_entropy) + ", batch loss " + fmt("%.2e", err_batch) +
         ", " + fmt("%.1f", secs) + "s";
}

// --- criterion 4 ---

std::string criterion_policy_invariants() {
  const auto start = std::chrono::steady_clock::now();
  double worst_sum = 0.0, worst_perm = 0.0, worst_uniform = 0.0;
  Rng meta(4004);
  for (int draw = 0; draw < 10000; ++draw) {
    ModelConfig cfg = tiny_model();
    cfg.heads = (draw % 2 == 0) ? 2 : 4;
    const int q = 2 + meta.next_index(2);   // 2..3
    const int z = 1 + meta.next_index(5);   // 1..5
    GenConfig gen;
    gen.n_edges = q + 2;
    gen.region_size = q;
    gen.n_requests = z;
    gen.seed = meta.next_u64();
    gen.backlog_count_max = 10;
    const Instance inst = generate(gen);
    const auto params = ModelParams::init(cfg, meta.next_u64());
    const auto pass = forward(params, cfg, inst);

    for (int col = 0; col < z; ++col) {
      worst_sum = std::max(worst_sum,
                           std::abs(pass.probs.col(col).sum() - 1.0));
    }

    // Joint permutation equivariance: reverse the request list.
    Instance reversed = inst;
    std::reverse(reversed.requests.begin(), reversed.requests.end());
    const auto rpass = forward(params, cfg, reversed);
    for (int col = 0; col < z; ++col) {
      worst_perm = std::max(
          worst_perm, (rpass.probs.col(z - 1 - col) - pass.probs.col(col))
                          .cwiseAbs()
                          .maxCoeff());
    }

    // Identical-edge symmetry.
    Instance symmetric = inst;
    for (int e = 1; e < q; ++e) {
      symmetric.edges[e] = symmetric.edges[0];
      symmetric.edges[e].id = e;
      symmetric.snapshots[e] = symmetric.snapshots[0];
    }
    const auto spass = forward(params, cfg, symmetric);
    for (int col = 0; col < z; ++col) {
      for (int row = 0; row < q; ++row) {
        worst_uniform = std::max(
            worst_uniform, std::abs(spass.probs(row, col) - 1.0 / q));
      }
    }
  }
  if (worst_sum > 1e-6) fail("column sum off by " + fmt("%.3g", worst_sum));
  if (worst_perm > 1e-9) {
    fail("permutation equivariance off by " + fmt("%.3g", worst_perm));
  }
  if (worst_uniform > 1e-6) {
    fail("identical-edge symmetry off by " + fmt("%.3g", worst_uniform));
  }
  return "10k draws: col-sum " + fmt("%.1e", worst_sum) + ", equivariance " +
         fmt("%.1e", worst_perm) + ", symmetry " + fmt("%.1e", worst_uniform) +
         ", " + fmt("%.1f", elapsed_since(start)) + "s";
}

// --- criteria 5 and 6 ---

std::string criterion_desk_learning(Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const TrainResult& tr = ctx.trained();
  ctx.build_heldout();

  double gap_corais = 0.0, gap_random = 0.0;
  for (std::size_t i = 0; i < ctx.heldout.size(); ++i) {
    const Instance& inst = ctx.heldout[i];
    const auto pass =
        forward(tr.final_checkpoint.params, tr.final_checkpoint.config, inst);
    const double mc =
        decode_sampling(pass.probs, 128, inst, substream(5005, i).next_u64())
            .makespan;
    const double mr =
        evaluate(inst,
                 schedule_random(inst, 128, substream(5006, i).next_u64()))
            .makespan;
    gap_corais += gap(mc, ctx.exact_makespans[i]);
    gap_random += gap(mr, ctx.exact_makespans[i]);
  }
  gap_corais /= static_cast<double>(ctx.heldout.size());
  gap_random /= static_cast<double>(ctx.heldout.size());

  if (tr.heldout.size() < 2) fail("training produced no held-out series");
  const double first = tr.heldout.front().second;
  const double last = tr.heldout.back().second;
  if (!(last < first)) {
    fail("held-out makespan did not decrease (" + fmt("%.4f", first) +
         " -> " + fmt("%.4f", last) + ")");
  }
  if (gap_corais > 1.15) {
    fail("corais(128) mean gap " + fmt("%.4f", gap_corais) + " > 1.15");
  }
  if (!(gap_corais < gap_random)) {
    fail("corais(128) gap " + fmt("%.4f", gap_corais) +
         " not below random(128) gap " + fmt("%.4f", gap_random));
  }
  return "corais(128) gap " + fmt("%.4f", gap_corais) + " <= 1.15 and < random(128) gap " +
         fmt("%.4f", gap_random) + "; heldout " + fmt("%.3f", first) +
         " -> " + fmt("%.3f", last) + ", " +
         fmt("%.1f", elapsed_since(start)) + "s";
}

std::string criterion_baseline_ordering(Context& ctx) {
  const TrainResult& tr = ctx.trained();
  ctx.build_heldout();
  double m_exact = 0, m_corais = 0, m_r128 = 0, m_r1 = 0, m_local = 0;
  for (std::size_t i = 0; i < ctx.heldout.size(); ++i) {
    const Instance& inst = ctx.heldout[i];
    const std::uint64_t seed = substream(6006, i).next_u64();
    m_exact += ctx.exact_makespans[i];
    const auto pass =
        forward(tr.final_checkpoint.params, tr.final_checkpoint.config, inst);
    m_corais += decode_sampling(pass.probs, 128, inst, seed).makespan;
    m_r128 += evaluate(inst, schedule_random(inst, 128, seed)).makespan;
    m_r1 += evaluate(inst, schedule_random(inst, 1, seed)).makespan;
    m_local += evaluate(inst, schedule_local(inst)).makespan;
  }
  const double n = static_cast<double>(ctx.heldout.size());
  m_exact /= n;
  m_corais /= n;
  m_r128 /= n;
  m_r1 /= n;
  m_local /= n;
  if (m_exact > m_corais + 1e-9) fail("exact above corais(128)");
  if (!(m_corais < m_r128)) fail("corais(128) not below random(128)");
  if (m_r128 > m_r1 + 1e-9) fail("random(128) above random(1)");
  if (m_exact > m_local + 1e-9) fail("exact above local");
  return "means: exact " + fmt("%.3f", m_exact) + " <= corais(128) " +
         fmt("%.3f", m_corais) + " < random(128) " + fmt("%.3f", m_r128) +
         " <= random(1) " + fmt("%.3f", m_r1) + "; local " +
         fmt("%.3f", m_local);
}

// --- criterion 7 ---

std::string criterion_characteristics(Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const Checkpoint& ckpt = ctx.trained().final_checkpoint;
  const int trials = 1000;

  const auto lb = run_characteristic(Scenario::load_balance, ckpt, trials, 71);
  const double cv = coefficient_of_variation(lb.ereqn);
  const double lc_mean =
      std::accumulate(lb.lcost.begin(), lb.lcost.end(), 0.0) / 5.0;
  const double lc_spread =
      (*std::max_element(lb.lcost.begin(), lb.lcost.end()) -
       *std::min_element(lb.lcost.begin(), lb.lcost.end())) /
      lc_mean;
  if (cv > 0.15) fail("LB EReqN coefficient of variation " + fmt("%.3f", cv));
  if (lc_spread > 0.10) fail("LB LCost spread " + fmt("%.3f", lc_spread));

  const auto wp_spec = make_scenario(Scenario::workload_perception, 72);
  const auto wp =
      run_characteristic(Scenario::workload_perception, ckpt, trials, 72);
  const double rho_wp = spearman(wp_spec.backlog_burden, wp.ereqn);
  if (!(rho_wp <= -0.8)) fail("WP Spearman " + fmt("%.3f", rho_wp));

  const auto ha_spec = make_scenario(Scenario::heterogeneity, 73);
  const auto ha = run_characteristic(Scenario::heterogeneity, ckpt, trials, 73);
  const double rho_ha = spearman(ha_spec.compute_speed, ha.ereqn);
  if (!(rho_ha >= 0.8)) fail("HA Spearman " + fmt("%.3f", rho_ha));

  return "LB cv " + fmt("%.3f", cv) + ", LCost spread " +
         fmt("%.3f", lc_spread) + "; WP rho " + fmt("%.3f", rho_wp) +
         "; HA rho " + fmt("%.3f", rho_ha) + ", " +
         fmt("%.1f", elapsed_since(start)) + "s";
}

// --- criterion 8 ---

std::string criterion_real_time() {
  const ModelConfig cfg;  // full-size configuration
  const auto params = ModelParams::init(cfg, 8008);

  struct Scale {
    int n, q, z;
  };
  const std::array<Scale, 4> scales = {
      Scale{10, 5, 50}, Scale{20, 10, 100}, Scale{60, 30, 400},
      Scale{100, 50, 800}};
  std::vector<double> times;
  for (const Scale& s : scales) {
    GenConfig gen;
    gen.n_edges = s.n;
    gen.region_size = s.q;
    gen.n_requests = s.z;
    gen.seed = 8080;
    const Instance inst = generate(gen);
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      const auto pass = forward(params, cfg, inst);
      decode_sampling(pass.probs, 1000, inst, 99);
      best = std::min(best, elapsed_since(start));
    }
    times.push_back(best);
  }
  const double t_20_10_100 = times[1];
  if (t_20_10_100 >= 1.0) {
    fail("decision on (20,10,100) took " + fmt("%.3f", t_20_10_100) + "s");
  }
  // Slope of log(time) against log(Q*Z); d_h, L, K are constant across the
  // scales so the bound reduces to the Q*Z product.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const double x = std::log(static_cast<double>(scales[i].q) * scales[i].z);
    const double y = std::log(times[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(scales.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  if (slope > 1.05) fail("log-log slope " + fmt("%.3f", slope) + " > 1.05");
  return "decision (20,10,100) in " + fmt("%.3f", t_20_10_100) +
         "s; scale times " + fmt("%.3f", times[0]) + "/" +
         fmt("%.3f", times[1]) + "/" + fmt("%.3f", times[2]) + "/" +
         fmt("%.3f", times[3]) + "s, slope " + fmt("%.2f", slope);
}

// --- criterion 9 ---

std::string strip_timing_columns(const std::string& csv,
                                 const std::vector<int>& drop) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string field;
    int col = 0;
    bool first = true;
    while (std::getline(row, field, ',')) {
      if (std::find(drop.begin(), drop.end(), col) == drop.end()) {
        if (!first) out << ',';
        out << field;
        first = false;
      }
      ++col;
    }
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("missing CLI output " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string criterion_reproducibility() {
  const char* cli = std::getenv("CORAIS_CLI");
  if (cli == nullptr) fail("CORAIS_CLI is not set");
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "corais_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);

  auto bench_run = [&](const std::string& tag) {
    const std::string records = (dir / ("records_" + tag + ".csv")).string();
    const std::string metrics = (dir / ("metrics_" + tag + ".csv")).string();
    const std::string command =
        std::string("\"") + cli +
        "\" bench --n 5 --q 3 --z 8 --count 5 --seed 11 --gen-seed 3 "
        "--methods local,predicted,random:16,exact --ref exact "
        "--records-csv \"" + records + "\" --metrics-csv \"" + metrics +
        "\" > /dev/null";
    if (std::system(command.c_str()) != 0) fail("bench invocation failed");
    return std::make_pair(read_file(records), read_file(metrics));
  };
  const auto [rec1, met1] = bench_run("a");
  const auto [rec2, met2] = bench_run("b");
  // records: scale,method,instance,makespan,decision_seconds,seed,status;
  // metrics: scale,method,gap_m,time_m,time_s,cost_m.
  if (strip_timing_columns(rec1, {4}) != strip_timing_columns(rec2, {4})) {
    fail("records CSV differs across identical runs");
  }
  if (strip_timing_columns(met1, {3, 4}) != strip_timing_columns(met2, {3, 4})) {
    fail("metrics CSV differs across identical runs");
  }

  auto gen_run = [&](const std::string& tag) {
    const fs::path out = dir / ("gen_" + tag);
    const std::string command = std::string("\"") + cli +
                                "\" gen --n 6 --q 3 --z 10 --seed 5 --count 3 "
                                "--out-dir \"" +
                                out.string() + "\" > /dev/null";
    if (std::system(command.c_str()) != 0) fail("gen invocation failed");
    std::string all;
    for (int i = 0; i < 3; ++i) {
      char name[40];
      std::snprintf(name, sizeof(name), "instance_%04d.json", i);
      all += read_file((out / name).string());
    }
    all += read_file((out / "manifest.csv").string());
    return all;
  };
  if (gen_run("a") != gen_run("b")) {
    fail("generated instances differ across identical runs");
  }
  fs::remove_all(dir);
  return "bench CSVs (minus timing columns) and generated instances are "
         "bit-identical across reruns";
}

}  // namespace

int main() {
  Context ctx;
  struct Criterion {
    int id;
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "objective correctness", criterion_objective_correctness},
      {2, "exact-solver equivalence", criterion_exact_solver},
      {3, "gradient fidelity", criterion_gradient_fidelity},
      {4, "policy invariants", criterion_policy_invariants},
      {5, "desk-scale learning", [&] { return criterion_desk_learning(ctx); }},
      {6, "baseline ordering",
       [&] { return criterion_baseline_ordering(ctx); }},
      {7, "characteristic validations",
       [&] { return criterion_characteristics(ctx); }},
      {8, "real-time decision scaling", criterion_real_time},
      {9, "CLI reproducibility", criterion_reproducibility},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    try {
      const std::string detail = c.run();
      std::printf("[PASS] criterion %d: %s - %s\n", c.id, c.name,
                  detail.c_str());
    } catch (const Failure& f) {
      ++failures;
      std::printf("[FAIL] criterion %d: %s - %s\n", c.id, c.name,
                  f.detail.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %d: %s - unexpected error: %s\n", c.id,
                  c.name, e.what());
    }
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
