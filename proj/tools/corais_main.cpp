// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: instance generation, baseline and exact solving,
// MILP export, training, the benchmark suite and characteristic validation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "corais/baselines.hpp"
#include "corais/bench.hpp"
#include "corais/checkpoint.hpp"
#include "corais/decode.hpp"
#include "corais/instance_io.hpp"
#include "corais/instancegen.hpp"
#include "corais/rng.hpp"
#include "corais/scenarios.hpp"
#include "corais/training.hpp"

namespace {

using namespace corais;
using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path);
}

TqForm parse_form(const std::string& name) {
  if (name == "standard") return TqForm::standard;
  if (name == "all-inbound") return TqForm::all_inbound;
  throw Error("unknown objective form '" + name + "'");
}

// --- gen ---

struct GenCli {
  GenConfig cfg;
  int count = 1;
  std::string out_dir = ".";
};

int run_gen(const GenCli& cli) {
  std::filesystem::create_directories(cli.out_dir);
  std::ostringstream manifest;
  manifest << "file,seed,n_edges,region_size,n_requests\n";
  for (int i = 0; i < cli.count; ++i) {
    GenConfig cfg = cli.cfg;
    cfg.seed = substream(cli.cfg.seed, static_cast<std::uint64_t>(i)).next_u64();
    Instance inst = generate(cfg);
    char name[48];
    std::snprintf(name, sizeof(name), "instance_%04d.json", i);
    const std::string path =
        (std::filesystem::path(cli.out_dir) / name).string();
    save_instance_file(inst, path);
    manifest << name << ',' << cfg.seed << ',' << cfg.n_edges << ','
             << cfg.region_size << ',' << cfg.n_requests << '\n';
  }
  const std::string manifest_path =
      (std::filesystem::path(cli.out_dir) / "manifest.csv").string();
  write_text(manifest_path, manifest.str());
  std::printf("generated %d instance(s) under %s\n", cli.count,
              cli.out_dir.c_str());
  std::printf("%-6s %-8s %-8s %-10s\n", "count", "edges", "region", "requests");
  std::printf("%-6d %-8d %-8d %-10d\n", cli.count, cli.cfg.n_edges,
              cli.cfg.region_size, cli.cfg.n_requests);
  return 0;
}

// --- solve ---

struct SolveCli {
  std::string in_path;
  std::string method = "exact";
  int k = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  std::string out_csv;
  std::string form = "standard";
};

int run_solve(const SolveCli& cli) {
  Instance inst = load_instance_file(cli.in_path);
  if (auto v = validate_instance(inst)) {
    throw Error("invalid instance: " + v->describe());
  }
  Assignment asg;
  const auto start = std::chrono::steady_clock::now();
  if (cli.method == "local") {
    asg = schedule_local(inst);
  } else if (cli.method == "predicted") {
    asg = schedule_predicted(inst);
  } else if (cli.method == "random") {
    asg = schedule_random(inst, cli.k, cli.seed);
  } else if (cli.method == "exact") {
    asg = solve_exact(inst, cli.budget).assignment;
  } else {
    throw Error("unknown method '" + cli.method + "'");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const double makespan = evaluate(inst, asg, parse_form(cli.form)).makespan;

  std::ostringstream csv;
  csv << "request,exec_edge\n";
  for (int z = 0; z < asg.size(); ++z) {
    csv << z << ',' << asg.exec_edge[z] << '\n';
  }
  if (!cli.out_csv.empty()) write_text(cli.out_csv, csv.str());

  std::printf("%-12s %-22s %-12s\n", "method", "makespan", "seconds");
  std::printf("%-12s %-22.17g %-12.4f\n", cli.method.c_str(), makespan,
              seconds);
  if (cli.out_csv.empty()) std::fputs(csv.str().c_str(), stdout);
  return 0;
}

// --- export-milp ---

int run_export_milp(const std::string& in_path, const std::string& out_path,
                    const std::string& form) {
  Instance inst = load_instance_file(in_path);
  const std::string text = export_milp(inst, parse_form(form));
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text(out_path, text);
    std::printf("wrote %s (%zu bytes)\n", out_path.c_str(), text.size());
  }
  return 0;
}

// --- train ---

GenConfig gen_from_json(const json& j) {
  GenConfig gen;
  gen.n_edges = j.value("n_edges", gen.n_edges);
  gen.region_size = j.value("region_size", gen.region_size);
  gen.n_requests = j.value("n_requests", gen.n_requests);
  gen.c_t = j.value("c_t", gen.c_t);
  gen.backlog_count_min = j.value("backlog_count_min", gen.backlog_count_min);
  gen.backlog_count_max = j.value("backlog_count_max", gen.backlog_count_max);
  gen.input_size_min = j.value("input_size_min", gen.input_size_min);
  gen.input_size_max = j.value("input_size_max", gen.input_size_max);
  gen.output_size_min = j.value("output_size_min", gen.output_size_min);
  gen.output_size_max = j.value("output_size_max", gen.output_size_max);
  gen.phi_degree = j.value("phi_degree", gen.phi_degree);
  gen.phi_coeff_min = j.value("phi_coeff_min", gen.phi_coeff_min);
  gen.phi_coeff_max = j.value("phi_coeff_max", gen.phi_coeff_max);
  if (j.contains("replica_choices")) {
    gen.replica_choices = j.at("replica_choices").get<std::vector<int>>();
  }
  return gen;
}

ModelConfig model_from_json(const json& j) {
  ModelConfig m;
  m.d_h = j.value("d_h", m.d_h);
  m.edge_layers = j.value("edge_layers", m.edge_layers);
  m.request_layers = j.value("request_layers", m.request_layers);
  m.heads = j.value("heads", m.heads);
  m.ff_hidden = j.value("ff_hidden", m.ff_hidden);
  m.clip_c = j.value("clip_c", m.clip_c);
  m.phi_degree = j.value("phi_degree", m.phi_degree);
  return m;
}

TrainConfig train_config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(std::string("train config parse error: ") + e.what());
  }
  TrainConfig cfg;
  cfg.batch_size = j.value("batch_size", cfg.batch_size);
  cfg.samples_per_instance =
      j.value("samples_per_instance", cfg.samples_per_instance);
  cfg.lr = j.value("lr", cfg.lr);
  cfg.c1 = j.value("c1", cfg.c1);
  cfg.c2 = j.value("c2", cfg.c2);
  cfg.total_batches = j.value("total_batches", cfg.total_batches);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.eval_every = j.value("eval_every", cfg.eval_every);
  cfg.eval_instances = j.value("eval_instances", cfg.eval_instances);
  cfg.eval_samples = j.value("eval_samples", cfg.eval_samples);
  cfg.logprob_floor = j.value("logprob_floor", cfg.logprob_floor);
  if (j.contains("gen")) cfg.gen = gen_from_json(j.at("gen"));
  if (j.contains("model")) cfg.model = model_from_json(j.at("model"));
  return cfg;
}

int run_train(const std::string& config_path, const std::string& out_dir,
              const std::string& resume) {
  TrainConfig cfg = train_config_from_file(config_path);
  cfg.out_dir = out_dir;
  TrainResult result = train(cfg, resume);
  std::printf("trained %d batches; final loss %.6g\n",
              static_cast<int>(result.losses.size()),
              result.losses.empty() ? 0.0 : result.losses.back());
  if (!result.heldout.empty()) {
    std::printf("%-10s %-20s\n", "batch", "heldout_makespan");
    for (const auto& [batch, makespan] : result.heldout) {
      std::printf("%-10d %-20.6f\n", batch, makespan);
    }
  }
  if (!result.final_checkpoint_path.empty()) {
    std::printf("final checkpoint: %s\n", result.final_checkpoint_path.c_str());
  }
  return 0;
}

// --- bench ---

struct BenchCli {
  GenConfig gen;
  std::string scales;  // "n,q,z[;n,q,z...]" overrides --n/--q/--z
  int count = 20;
  std::uint64_t seed = 0;
  std::string methods = "local,predicted,random:1,random:128,exact";
  std::string checkpoint;
  std::string ref = "exact";
  std::optional<std::uint64_t> budget;
  std::string records_csv;
  std::string metrics_csv;
};

std::vector<std::array<int, 3>> parse_scales(const BenchCli& cli) {
  if (cli.scales.empty()) {
    return {{cli.gen.n_edges, cli.gen.region_size, cli.gen.n_requests}};
  }
  std::vector<std::array<int, 3>> out;
  std::stringstream in(cli.scales);
  std::string triple;
  while (std::getline(in, triple, ';')) {
    if (triple.empty()) continue;
    std::array<int, 3> shape{};
    if (std::sscanf(triple.c_str(), "%d,%d,%d", &shape[0], &shape[1],
                    &shape[2]) != 3) {
      throw Error("bad scale '" + triple + "' (expected n,q,z)");
    }
    out.push_back(shape);
  }
  if (out.empty()) throw Error("no scales given");
  return out;
}

// Prefixes every CSV row with a scale column.
std::string with_scale_column(const std::string& csv,
                              const std::string& scale, bool& first_chunk) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      if (first_chunk) out << "scale," << line << '\n';
      header = false;
      continue;
    }
    out << scale << ',' << line << '\n';
  }
  first_chunk = false;
  return out.str();
}

std::vector<Method> build_methods(const BenchCli& cli,
                                  const std::optional<Checkpoint>& ckpt) {
  std::vector<Method> methods;
  std::stringstream in(cli.methods);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    if (token == "local") {
      methods.push_back({"local", [](const Instance& inst, std::uint64_t) {
                           return schedule_local(inst);
                         }});
    } else if (token == "predicted") {
      methods.push_back({"predicted", [](const Instance& inst, std::uint64_t) {
                           return schedule_predicted(inst);
                         }});
    } else if (token == "exact") {
      auto budget = cli.budget;
      methods.push_back({"exact", [budget](const Instance& inst,
                                            std::uint64_t) {
                           return solve_exact(inst, budget).assignment;
                         }});
    } else if (token.rfind("random:", 0) == 0) {
      const int k = std::stoi(token.substr(7));
      methods.push_back({"random(" + std::to_string(k) + ")",
                         [k](const Instance& inst, std::uint64_t seed) {
                           return schedule_random(inst, k, seed);
                         }});
    } else if (token.rfind("corais:", 0) == 0) {
      if (!ckpt) throw Error("method '" + token + "' needs --checkpoint");
      const std::string mode = token.substr(7);
      const Checkpoint& model = *ckpt;
      if (mode == "greedy") {
        methods.push_back(
            {"corais(greedy)", [&model](const Instance& inst, std::uint64_t) {
               return decode_greedy(
                   forward(model.params, model.config, inst).probs);
             }});
      } else {
        const int n = std::stoi(mode);
        methods.push_back(
            {"corais(" + mode + ")",
             [&model, n](const Instance& inst, std::uint64_t seed) {
               auto pass = forward(model.params, model.config, inst);
               return decode_sampling(pass.probs, n, inst, seed).assignment;
             }});
      }
    } else {
      throw Error("unknown method '" + token + "'");
    }
  }
  if (methods.empty()) throw Error("no methods selected");
  return methods;
}

int run_bench(const BenchCli& cli) {
  std::optional<Checkpoint> ckpt;
  if (!cli.checkpoint.empty()) ckpt = load_checkpoint(cli.checkpoint);
  auto methods = build_methods(cli, ckpt);
  const auto scales = parse_scales(cli);

  std::string records_doc, metrics_doc;
  bool records_first = true, metrics_first = true;
  for (std::size_t si = 0; si < scales.size(); ++si) {
    const auto [n, q, z] = scales[si];
    GenConfig base = cli.gen;
    base.n_edges = n;
    base.region_size = q;
    base.n_requests = z;
    const std::uint64_t scale_seed = substream(cli.gen.seed, si).next_u64();
    std::vector<Instance> instances;
    for (int i = 0; i < cli.count; ++i) {
      GenConfig cfg = base;
      cfg.seed = substream(scale_seed, static_cast<std::uint64_t>(i)).next_u64();
      instances.push_back(generate(cfg));
    }
    auto records =
        run_suite(methods, instances, substream(cli.seed, si).next_u64());
    auto metrics = summarize(records, cli.ref);
    const std::string scale_name = std::to_string(n) + "x" +
                                   std::to_string(q) + "x" +
                                   std::to_string(z);
    records_doc +=
        with_scale_column(records_to_csv(records), scale_name, records_first);
    metrics_doc +=
        with_scale_column(metrics_to_csv(metrics), scale_name, metrics_first);
    std::printf("scale (%d, %d, %d), %d instance(s):\n", n, q, z, cli.count);
    std::fputs(metrics_to_table(metrics).c_str(), stdout);
  }
  if (!cli.records_csv.empty()) write_text(cli.records_csv, records_doc);
  if (!cli.metrics_csv.empty()) write_text(cli.metrics_csv, metrics_doc);
  return 0;
}

// --- validate ---

struct ValidateCli {
  std::string scenario = "lb";
  std::string checkpoint;
  int trials = 1000;
  std::uint64_t seed = 0;
  int samples = 1000;
  std::string out_csv;
};

int run_validate(const ValidateCli& cli) {
  if (cli.checkpoint.empty()) throw Error("validate needs --checkpoint");
  Checkpoint ckpt = load_checkpoint(cli.checkpoint);
  const Scenario kind = scenario_from_name(cli.scenario);
  auto spec = make_scenario(kind, cli.seed);
  auto result =
      run_characteristic(kind, ckpt, cli.trials, cli.seed, cli.samples);

  std::ostringstream csv;
  csv << "edge,ereqn,lcost\n";
  for (int q = 0; q < kScenarioEdges; ++q) {
    char row[96];
    std::snprintf(row, sizeof(row), "%c,%.17g,%.17g\n", 'A' + q,
                  result.ereqn[q], result.lcost[q]);
    csv << row;
  }
  if (!cli.out_csv.empty()) write_text(cli.out_csv, csv.str());

  std::printf("scenario %s over %d trials\n", cli.scenario.c_str(),
              result.trials);
  std::printf("%-6s %-12s %-12s\n", "edge", "EReqN", "LCost");
  for (int q = 0; q < kScenarioEdges; ++q) {
    std::printf("%-6c %-12.4f %-12.4f\n", 'A' + q, result.ereqn[q],
                result.lcost[q]);
  }
  if (kind == Scenario::load_balance) {
    std::printf("EReqN coefficient of variation: %.4f\n",
                coefficient_of_variation(result.ereqn));
  } else if (kind == Scenario::workload_perception) {
    std::printf("Spearman(burden, EReqN): %.4f\n",
                spearman(spec.backlog_burden, result.ereqn));
  } else {
    std::printf("Spearman(speed, EReqN): %.4f\n",
                spearman(spec.compute_speed, result.ereqn));
  }
  if (cli.out_csv.empty()) std::fputs(csv.str().c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-edge cooperative request scheduling toolkit"};
  app.require_subcommand(1);

  GenCli gen_cli;
  auto* gen_cmd = app.add_subcommand("gen", "generate random instances");
  gen_cmd->add_option("--n", gen_cli.cfg.n_edges, "edges in the system");
  gen_cmd->add_option("--q", gen_cli.cfg.region_size, "schedulable edges");
  gen_cmd->add_option("--z", gen_cli.cfg.n_requests, "requests per instance");
  gen_cmd->add_option("--seed", gen_cli.cfg.seed, "master seed");
  gen_cmd->add_option("--count", gen_cli.count, "number of instances");
  gen_cmd->add_option("--out-dir", gen_cli.out_dir, "output directory");
  gen_cmd->add_option("--c-t", gen_cli.cfg.c_t, "transmission constant");
  gen_cmd->add_option("--phi-degree", gen_cli.cfg.phi_degree,
                      "phi polynomial degree");
  gen_cmd->add_option("--backlog-max", gen_cli.cfg.backlog_count_max,
                      "exclusive upper bound on queue lengths");

  SolveCli solve_cli;
  auto* solve_cmd = app.add_subcommand("solve", "schedule one instance");
  solve_cmd->add_option("--in", solve_cli.in_path, "instance file")
      ->required();
  solve_cmd->add_option("--method", solve_cli.method,
                        "local|predicted|random|exact");
  solve_cmd->add_option("--k", solve_cli.k, "samples for random");
  solve_cmd->add_option("--seed", solve_cli.seed, "seed");
  std::uint64_t budget_value = 0;
  auto* budget_opt =
      solve_cmd->add_option("--budget", budget_value, "node budget for exact");
  solve_cmd->add_option("--out-csv", solve_cli.out_csv, "assignment CSV path");
  solve_cmd->add_option("--form", solve_cli.form, "standard|all-inbound");

  std::string milp_in, milp_out, milp_form = "standard";
  auto* milp_cmd =
      app.add_subcommand("export-milp", "emit the exact MILP in LP format");
  milp_cmd->add_option("--in", milp_in, "instance file")->required();
  milp_cmd->add_option("--out", milp_out, "LP file path");
  milp_cmd->add_option("--form", milp_form, "standard|all-inbound");

  std::string train_config, train_out = "train_out", train_resume;
  auto* train_cmd = app.add_subcommand("train", "train the scheduler");
  train_cmd->add_option("--config", train_config, "train config JSON")
      ->required();
  train_cmd->add_option("--out", train_out, "output directory");
  train_cmd->add_option("--resume", train_resume, "checkpoint to resume from");

  BenchCli bench_cli;
  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark suite");
  bench_cmd->add_option("--n", bench_cli.gen.n_edges, "edges");
  bench_cmd->add_option("--q", bench_cli.gen.region_size, "schedulable edges");
  bench_cmd->add_option("--z", bench_cli.gen.n_requests, "requests");
  bench_cmd->add_option("--scales", bench_cli.scales,
                        "semicolon list of n,q,z shapes (overrides --n/q/z)");
  bench_cmd->add_option("--count", bench_cli.count, "instances");
  bench_cmd->add_option("--seed", bench_cli.seed, "suite seed");
  bench_cmd->add_option("--gen-seed", bench_cli.gen.seed, "instance seed");
  bench_cmd->add_option("--methods", bench_cli.methods,
                        "comma list: local,predicted,random:K,exact,"
                        "corais:greedy,corais:N");
  bench_cmd->add_option("--checkpoint", bench_cli.checkpoint,
                        "trained model for corais methods");
  bench_cmd->add_option("--ref", bench_cli.ref, "reference method for Gap-M");
  std::uint64_t bench_budget = 0;
  auto* bench_budget_opt = bench_cmd->add_option(
      "--budget", bench_budget, "node budget for the exact method");
  bench_cmd->add_option("--records-csv", bench_cli.records_csv,
                        "per-run CSV path");
  bench_cmd->add_option("--metrics-csv", bench_cli.metrics_csv,
                        "metrics CSV path");

  ValidateCli validate_cli;
  auto* validate_cmd =
      app.add_subcommand("validate", "characteristic validation scenarios");
  validate_cmd->add_option("--scenario", validate_cli.scenario, "lb|wp|ha");
  validate_cmd->add_option("--checkpoint", validate_cli.checkpoint,
                           "trained model");
  validate_cmd->add_option("--trials", validate_cli.trials, "trials");
  validate_cmd->add_option("--seed", validate_cli.seed, "seed");
  validate_cmd->add_option("--samples", validate_cli.samples,
                           "decode samples per trial");
  validate_cmd->add_option("--out-csv", validate_cli.out_csv, "CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) return run_gen(gen_cli);
    if (solve_cmd->parsed()) {
      if (budget_opt->count() > 0) solve_cli.budget = budget_value;
      return run_solve(solve_cli);
    }
    if (milp_cmd->parsed()) return run_export_milp(milp_in, milp_out, milp_form);
    if (train_cmd->parsed()) {
      return run_train(train_config, train_out, train_resume);
    }
    if (bench_cmd->parsed()) {
      if (bench_budget_opt->count() > 0) bench_cli.budget = bench_budget;
      return run_bench(bench_cli);
    }
    if (validate_cmd->parsed()) return run_validate(validate_cli);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
