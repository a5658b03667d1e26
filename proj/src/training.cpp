// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "corais/decode.hpp"
#include "corais/rng.hpp"

namespace corais {

namespace {

enum TrainStream : std::uint64_t {
  kInitStream = 101,
  kDataStream = 102,
  kSampleStream = 103,
  kHeldoutStream = 104,
  kEvalStream = 105,
};

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEpsilon = 1e-8;

}  // namespace

double sample_log_prob(const PolicyMatrix& policy, const Assignment& asg,
                       double floor) {
  if (asg.size() != policy.cols()) {
    throw Error("sample_log_prob: assignment length mismatch");
  }
  double total = 0.0;
  for (int z = 0; z < asg.size(); ++z) {
    total += std::log(std::max(policy(asg.exec_edge[z], z), floor));
  }
  return total;
}

double policy_entropy(const PolicyMatrix& policy) {
  double h = 0.0;
  for (Eigen::Index z = 0; z < policy.cols(); ++z) {
    for (Eigen::Index q = 0; q < policy.rows(); ++q) {
      const double a = policy(q, z);
      if (a > 0.0) h -= a * std::log(a);
    }
  }
  return h;
}

std::vector<double> centered_advantages(std::span<const double> losses) {
  double mean = 0.0;
  for (double l : losses) mean += l;
  mean /= static_cast<double>(losses.size());
  std::vector<double> adv(losses.size());
  for (std::size_t i = 0; i < losses.size(); ++i) adv[i] = losses[i] - mean;
  return adv;
}

PolicyLossResult policy_loss(const PolicyMatrix& policy, const Instance& inst,
                             int samples, std::uint64_t seed, double c1,
                             double c2, double floor) {
  if (samples < 2) {
    throw Error("policy_loss: at least two samples are required");
  }
  const int q_count = static_cast<int>(policy.rows());
  const int z_count = static_cast<int>(policy.cols());

  std::vector<Assignment> drawn(samples);
  std::vector<double> log_probs(samples);
  PolicyLossResult result;
  result.sample_makespans.resize(samples);
  for (int s = 0; s < samples; ++s) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(s));
    Assignment& asg = drawn[s];
    asg.exec_edge.resize(z_count);
    for (int z = 0; z < z_count; ++z) {
      const double u = rng.next_unit();
      double acc = 0.0;
      int pick = q_count - 1;
      for (int q = 0; q < q_count; ++q) {
        acc += policy(q, z);
        if (u < acc) {
          pick = q;
          break;
        }
      }
      asg.exec_edge[z] = pick;
    }
    log_probs[s] = sample_log_prob(policy, asg, floor);
    result.sample_makespans[s] = evaluate(inst, asg).makespan;
  }
  const std::vector<double> adv = centered_advantages(result.sample_makespans);

  result.entropy = policy_entropy(policy);
  result.loss = -c2 * result.entropy;
  for (int s = 0; s < samples; ++s) {
    result.loss += c1 * log_probs[s] * adv[s];
  }

  // Advantages are constants of the draw: gradients flow only through the
  // log probabilities and the entropy bonus.
  result.dprobs = Eigen::MatrixXd::Zero(q_count, z_count);
  for (int s = 0; s < samples; ++s) {
    const double weight = c1 * adv[s];
    for (int z = 0; z < z_count; ++z) {
      const int q = drawn[s].exec_edge[z];
      const double p = policy(q, z);
      if (p > floor) result.dprobs(q, z) += weight / p;
    }
  }
  for (int z = 0; z < z_count; ++z) {
    for (int q = 0; q < q_count; ++q) {
      const double a = policy(q, z);
      const double log_a = std::log(std::max(a, floor));
      result.dprobs(q, z) += c2 * (log_a + 1.0);
    }
  }
  return result;
}

BatchLossResult batch_loss(const ModelParams& params, const ModelConfig& cfg,
                           std::span<const Instance> instances, int samples,
                           std::uint64_t seed, double c1, double c2,
                           double floor) {
  if (instances.empty()) throw Error("batch_loss: empty batch");
  BatchLossResult out;
  out.grads = ModelParams::zeros_like(params);
  auto grad_tensors = out.grads.tensors();
  const double inv_n = 1.0 / static_cast<double>(instances.size());
  double makespan_sum = 0.0;
  std::int64_t makespan_count = 0;
  for (std::size_t g = 0; g < instances.size(); ++g) {
    const Instance& inst = instances[g];
    ForwardPass pass = forward(params, cfg, inst);
    PolicyLossResult pl =
        policy_loss(pass.probs, inst, samples,
                    substream(seed, static_cast<std::uint64_t>(g)).next_u64(),
                    c1, c2, floor);
    out.loss += pl.loss * inv_n;
    out.mean_entropy += pl.entropy * inv_n;
    for (double m : pl.sample_makespans) {
      makespan_sum += m;
      ++makespan_count;
    }
    ModelParams g_inst = backward(params, cfg, pass, pl.dprobs);
    auto inst_tensors = g_inst.tensors();
    for (std::size_t t = 0; t < grad_tensors.size(); ++t) {
      *grad_tensors[t] += inv_n * *inst_tensors[t];
    }
  }
  out.mean_sample_makespan =
      makespan_sum / static_cast<double>(makespan_count);
  return out;
}

namespace {

struct Adam {
  ModelParams m, v;
  std::int64_t t = 0;

  explicit Adam(const ModelParams& shape)
      : m(ModelParams::zeros_like(shape)), v(ModelParams::zeros_like(shape)) {}

  void step(ModelParams& params, const ModelParams& grads, double lr) {
    ++t;
    const double bc1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(t));
    auto pt = params.tensors();
    auto gt = const_cast<ModelParams&>(grads).tensors();
    auto mt = m.tensors();
    auto vt = v.tensors();
    for (std::size_t i = 0; i < pt.size(); ++i) {
      Eigen::MatrixXd& mm = *mt[i];
      Eigen::MatrixXd& vv = *vt[i];
      mm = kAdamBeta1 * mm + (1.0 - kAdamBeta1) * *gt[i];
      vv = (kAdamBeta2 * vv.array() +
            (1.0 - kAdamBeta2) * gt[i]->array().square())
               .matrix();
      pt[i]->array() -= lr * (mm.array() / bc1) /
                        ((vv.array() / bc2).sqrt() + kAdamEpsilon);
    }
  }
};

Instance train_instance(const TrainConfig& cfg, std::int64_t counter) {
  GenConfig gen = cfg.gen;
  gen.seed = substream(substream(cfg.seed, kDataStream).next_u64(),
                       static_cast<std::uint64_t>(counter))
                 .next_u64();
  return generate(gen);
}

double heldout_mean_makespan(const ModelParams& params, const TrainConfig& cfg,
                             std::span<const Instance> heldout) {
  double sum = 0.0;
  const std::uint64_t eval_seed = substream(cfg.seed, kEvalStream).next_u64();
  for (std::size_t i = 0; i < heldout.size(); ++i) {
    ForwardPass pass = forward(params, cfg.model, heldout[i]);
    sum += decode_sampling(pass.probs, cfg.eval_samples, heldout[i],
                           substream(eval_seed, i).next_u64())
               .makespan;
  }
  return sum / static_cast<double>(heldout.size());
}

}  // namespace

TrainResult train(const TrainConfig& cfg, const std::string& resume_from) {
  if (cfg.samples_per_instance < 2) {
    throw Error("train: samples_per_instance >= 2 required");
  }
  if (cfg.batch_size < 1) throw Error("train: batch_size >= 1 required");
  if (!(cfg.c1 > 0.0) || !(cfg.c2 > 0.0)) {
    throw Error("train: loss coefficients must be positive");
  }
  if (!(cfg.lr >= 0.0)) throw Error("train: learning rate must be >= 0");
  cfg.model.validate();
  require_valid_config(cfg.gen);

  ModelParams params = ModelParams::init(
      cfg.model, substream(cfg.seed, kInitStream).next_u64());
  Adam adam(params);
  std::int64_t start_batch = 0;
  if (!resume_from.empty()) {
    Checkpoint ckpt = load_checkpoint(resume_from);
    if (!ckpt.has_optimizer) {
      throw Error("train: checkpoint lacks optimizer state, cannot resume");
    }
    params = ckpt.params;
    adam.m = ckpt.adam_m;
    adam.v = ckpt.adam_v;
    adam.t = ckpt.adam_step;
    start_batch = ckpt.batches_done;
  }

  std::vector<Instance> heldout;
  const std::uint64_t heldout_seed =
      substream(cfg.seed, kHeldoutStream).next_u64();
  for (int i = 0; i < cfg.eval_instances; ++i) {
    GenConfig gen = cfg.gen;
    gen.seed = substream(heldout_seed, static_cast<std::uint64_t>(i)).next_u64();
    heldout.push_back(generate(gen));
  }

  const bool persist = !cfg.out_dir.empty();
  std::ofstream metrics;
  TrainResult result;
  if (persist) {
    std::filesystem::create_directories(cfg.out_dir);
    result.metrics_path =
        (std::filesystem::path(cfg.out_dir) / "metrics.csv").string();
    metrics.open(result.metrics_path,
                 start_batch == 0 ? std::ios::trunc : std::ios::app);
    if (!metrics) throw Error("train: cannot write " + result.metrics_path);
    if (start_batch == 0) {
      metrics << "batch,loss,entropy,heldout_makespan,wallclock_s\n";
    }
  }

  auto make_checkpoint = [&](std::int64_t batches_done) {
    Checkpoint ckpt;
    ckpt.config = cfg.model;
    ckpt.params = params;
    ckpt.has_optimizer = true;
    ckpt.adam_m = adam.m;
    ckpt.adam_v = adam.v;
    ckpt.adam_step = adam.t;
    ckpt.batches_done = batches_done;
    return ckpt;
  };
  auto save_as = [&](const Checkpoint& ckpt, const std::string& name) {
    const std::string path =
        (std::filesystem::path(cfg.out_dir) / name).string();
    save_checkpoint(ckpt, path);
    return path;
  };

  const std::uint64_t sample_seed =
      substream(cfg.seed, kSampleStream).next_u64();
  const auto start_time = std::chrono::steady_clock::now();
  double best_heldout = std::numeric_limits<double>::infinity();
  if (start_batch == 0 && cfg.eval_every > 0 && !heldout.empty() &&
      cfg.total_batches > 0) {
    // Baseline before the first update, so the held-out series starts at 0.
    result.heldout.emplace_back(0, heldout_mean_makespan(params, cfg, heldout));
  }
  for (std::int64_t b = start_batch; b < cfg.total_batches; ++b) {
    std::vector<Instance> batch;
    batch.reserve(cfg.batch_size);
    for (int i = 0; i < cfg.batch_size; ++i) {
      batch.push_back(
          train_instance(cfg, b * cfg.batch_size + i));
    }
    BatchLossResult bl = batch_loss(
        params, cfg.model, batch, cfg.samples_per_instance,
        substream(sample_seed, static_cast<std::uint64_t>(b)).next_u64(),
        cfg.c1, cfg.c2, cfg.logprob_floor);
    if (!std::isfinite(bl.loss)) {
      std::string saved;
      if (persist) saved = save_as(make_checkpoint(b), "ckpt_last_good.bin");
      throw Error("train: non-finite loss at batch " + std::to_string(b) +
                  (saved.empty() ? "" : "; last good checkpoint: " + saved));
    }
    adam.step(params, bl.grads, cfg.lr);
    result.losses.push_back(bl.loss);
    result.entropies.push_back(bl.mean_entropy);

    const bool eval_now =
        cfg.eval_every > 0 && ((b + 1) % cfg.eval_every == 0 ||
                               b + 1 == cfg.total_batches);
    double heldout_makespan = std::numeric_limits<double>::quiet_NaN();
    if (eval_now && !heldout.empty()) {
      heldout_makespan = heldout_mean_makespan(params, cfg, heldout);
      result.heldout.emplace_back(static_cast<int>(b + 1), heldout_makespan);
      if (persist) {
        save_as(make_checkpoint(b + 1), "ckpt_latest.bin");
        if (heldout_makespan < best_heldout) {
          best_heldout = heldout_makespan;
          save_as(make_checkpoint(b + 1), "ckpt_best.bin");
        }
      }
    }
    if (persist) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start_time)
              .count();
      char row[160];
      std::snprintf(row, sizeof(row), "%lld,%.17g,%.17g,",
                    static_cast<long long>(b), bl.loss, bl.mean_entropy);
      metrics << row;
      if (!std::isnan(heldout_makespan)) {
        std::snprintf(row, sizeof(row), "%.17g", heldout_makespan);
        metrics << row;
      }
      std::snprintf(row, sizeof(row), ",%.3f", elapsed);
      metrics << row << '\n';
    }
  }

  result.final_checkpoint = make_checkpoint(cfg.total_batches);
  if (persist) {
    result.final_checkpoint_path =
        save_as(result.final_checkpoint, "ckpt_final.bin");
  }
  return result;
}

}  // namespace corais
