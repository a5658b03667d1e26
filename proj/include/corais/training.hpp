// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corais/checkpoint.hpp"
#include "corais/instancegen.hpp"
#include "corais/model.hpp"
#include "corais/objective.hpp"

namespace corais {

struct TrainConfig {
  int batch_size = 128;
  int samples_per_instance = 64;  // S
  double lr = 1e-5;
  double c1 = 10.0;   // policy-gradient coefficient
  double c2 = 0.5;    // entropy coefficient
  int total_batches = 40000;
  GenConfig gen;
  ModelConfig model;
  std::uint64_t seed = 0;
  int eval_every = 100;
  int eval_instances = 100;
  int eval_samples = 128;
  double logprob_floor = 1e-12;
  std::string out_dir;  // empty: no checkpoints or metrics written
};

/// Sum over requests of the log probability of the chosen edge. Probabilities
/// below `floor` contribute log(floor) with zero gradient.
double sample_log_prob(const PolicyMatrix& policy, const Assignment& asg,
                       double floor = 1e-12);

/// Policy entropy -sum_z sum_q a log a, with 0 log 0 = 0.
double policy_entropy(const PolicyMatrix& policy);

/// Mean-centers sample losses into advantages; the result sums to zero.
std::vector<double> centered_advantages(std::span<const double> losses);

struct PolicyLossResult {
  double loss = 0.0;
  double entropy = 0.0;
  Eigen::MatrixXd dprobs;           // adjoint of the policy matrix
  std::vector<double> sample_makespans;
};

/// Score-function loss of one instance's policy: samples S assignments,
/// centers their makespans into advantages (no gradient flows through them),
/// and adds the entropy bonus: c1 * sum_s logp_s * A_s - c2 * H.
PolicyLossResult policy_loss(const PolicyMatrix& policy, const Instance& inst,
                             int samples, std::uint64_t seed, double c1,
                             double c2, double floor = 1e-12);

struct BatchLossResult {
  double loss = 0.0;
  double mean_entropy = 0.0;
  double mean_sample_makespan = 0.0;
  ModelParams grads;
};

/// Mean policy-gradient loss over a batch of instances, with exact gradients
/// for every parameter. Instance g samples from substream(seed, g).
BatchLossResult batch_loss(const ModelParams& params, const ModelConfig& cfg,
                           std::span<const Instance> instances, int samples,
                           std::uint64_t seed, double c1, double c2,
                           double floor = 1e-12);

struct TrainResult {
  std::vector<double> losses;      // one entry per batch
  std::vector<double> entropies;
  std::vector<std::pair<int, double>> heldout;  // (batch, mean makespan)
  Checkpoint final_checkpoint;
  std::string final_checkpoint_path;  // empty when out_dir is empty
  std::string metrics_path;
};

/// Runs the optimizer loop: fresh seeded instances per batch, Adam updates,
/// periodic held-out evaluation (sampling decode) and checkpointing. Pass a
/// checkpoint path in `resume_from` to continue a run bit-exactly.
TrainResult train(const TrainConfig& cfg, const std::string& resume_from = "");

}  // namespace corais
