// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "corais/domain.hpp"

namespace corais {

/// Architecture hyperparameters. `d_h` is the shared embedding width of both
/// encoders, split across `heads` attention heads; feed-forward sublayers use
/// one hidden layer of `ff_hidden` units with ReLU. Policy importances are
/// clipped to [-clip_c, clip_c] through tanh before the per-request softmax.
struct ModelConfig {
  int d_h = 224;
  int edge_layers = 5;     // L
  int request_layers = 3;  // K
  int heads = 8;           // M
  int ff_hidden = 512;
  double clip_c = 10.0;
  int phi_degree = 1;

  int edge_feature_dim() const { return 2 + (phi_degree + 1) + 1 + 5; }
  static constexpr int kRequestFeatureDim = 6;
  int head_dim() const { return d_h / heads; }
  void validate() const;
};

/// Weights of one attention layer. Head projections are stacked row-wise in
/// wq/wk/wv; wo holds the per-head output blocks side by side so the merged
/// head outputs are a single matrix product.
struct AttentionLayerParams {
  Eigen::MatrixXd wq, wk, wv, wo;        // d_h x d_h
  Eigen::MatrixXd ff_w1, ff_b1;          // ff x d_h, ff x 1
  Eigen::MatrixXd ff_w2, ff_b2;          // d_h x ff, d_h x 1
  Eigen::MatrixXd bn1_gamma, bn1_beta;   // d_h x 1
  Eigen::MatrixXd bn2_gamma, bn2_beta;   // d_h x 1
};

struct ModelParams {
  Eigen::MatrixXd edge_in_w, edge_in_b;
  Eigen::MatrixXd req_in_w, req_in_b;
  std::vector<AttentionLayerParams> edge_layers, req_layers;
  Eigen::MatrixXd ctx_wx;          // d_h x 3*d_h
  Eigen::MatrixXd ctx_wy, ctx_wv;  // d_h x d_h
  Eigen::MatrixXd ctx_wo;          // d_h x d_h
  Eigen::MatrixXd pol_wx, pol_wy;  // d_h x d_h

  /// Applies f(name, matrix) to every tensor in a fixed, documented order.
  template <typename F>
  void for_each_tensor(F&& f);
  template <typename F>
  void for_each_tensor(F&& f) const;

  /// Stable-ordered tensor pointers; two structurally equal ModelParams
  /// enumerate matching tensors at matching positions.
  std::vector<Eigen::MatrixXd*> tensors();
  std::vector<std::string> tensor_names() const;

  std::int64_t parameter_count() const;

  static ModelParams zeros_like(const ModelParams& other);

  /// Allocates all tensors for `cfg` with uniform(-1/sqrt(fan_in),
  /// +1/sqrt(fan_in)) entries; batch-norm scales start at 1, shifts at 0.
  static ModelParams init(const ModelConfig& cfg, std::uint64_t seed);
};

/// Q x Z column-stochastic matrix: column z is request z's distribution over
/// the schedulable edges.
using PolicyMatrix = Eigen::MatrixXd;

/// Edge rows [x, y, phi coefficients, replicas, c_le, c_in, t_in, b_le, b_in]
/// for the Q schedulable edges. Throws when an edge's phi degree does not
/// match the config.
Eigen::MatrixXd edge_features(const ModelConfig& cfg, const Instance& inst);

/// Request rows [src_x, src_y, f, pred_x, pred_y, u].
Eigen::MatrixXd request_features(const Instance& inst);

namespace detail {

struct BnCache {
  Eigen::VectorXd mean, inv_std;
  Eigen::MatrixXd xhat;
};

struct LayerTape {
  Eigen::MatrixXd x_in;
  Eigen::MatrixXd q, k, v;
  std::vector<Eigen::MatrixXd> attn;  // per head, tokens x tokens
  Eigen::MatrixXd heads_out;
  Eigen::MatrixXd skip1;
  BnCache bn1;
  Eigen::MatrixXd x_mid;
  Eigen::MatrixXd ff_pre, ff_act;
  Eigen::MatrixXd skip2;
  BnCache bn2;
  Eigen::MatrixXd x_out;
};

struct ContextTape {
  Eigen::VectorXd edge_pool, req_pool;
  std::vector<int> edge_pool_idx, req_pool_idx;
  Eigen::MatrixXd fc;                 // 3*d_h x Q
  Eigen::MatrixXd cx, cy, cv;         // d_h x Q, d_h x Z, d_h x Z
  std::vector<Eigen::MatrixXd> attn;  // per head, Q x Z (softmax over Z)
  Eigen::MatrixXd heads_out;          // d_h x Q
  Eigen::MatrixXd ctx;                // d_h x Q
};

}  // namespace detail

/// Full activation record of one forward evaluation; backward() replays it.
struct ForwardPass {
  Eigen::MatrixXd edge_tokens;  // edge features as columns
  Eigen::MatrixXd req_tokens;   // request features as columns
  std::vector<detail::LayerTape> edge_tape, req_tape;
  Eigen::MatrixXd edge_final, req_final;
  detail::ContextTape ctx;
  Eigen::MatrixXd px, py;
  Eigen::MatrixXd scores;  // Q x Z, pre-clipping
  Eigen::MatrixXd imp;     // Q x Z, clipped importances
  PolicyMatrix probs;      // Q x Z
};

/// Runs the full scheduler network on one instance. With zero requests the
/// pass is empty and probs has zero columns. Throws Error ("numeric
/// overflow") when an activation goes non-finite.
ForwardPass forward(const ModelParams& params, const ModelConfig& cfg,
                    const Instance& inst);

/// Exact reverse-mode gradients of a scalar loss with adjoint `dprobs`
/// with respect to every parameter. `pass` must come from forward() on the
/// same params/instance.
ModelParams backward(const ModelParams& params, const ModelConfig& cfg,
                     const ForwardPass& pass,
                     const Eigen::MatrixXd& dprobs);

// --- template bodies ---

template <typename F>
void ModelParams::for_each_tensor(F&& f) {
  f("edge_in_w", edge_in_w);
  f("edge_in_b", edge_in_b);
  f("req_in_w", req_in_w);
  f("req_in_b", req_in_b);
  auto visit_layer = [&](const std::string& prefix, AttentionLayerParams& l) {
    f(prefix + ".wq", l.wq);
    f(prefix + ".wk", l.wk);
    f(prefix + ".wv", l.wv);
    f(prefix + ".wo", l.wo);
    f(prefix + ".ff_w1", l.ff_w1);
    f(prefix + ".ff_b1", l.ff_b1);
    f(prefix + ".ff_w2", l.ff_w2);
    f(prefix + ".ff_b2", l.ff_b2);
    f(prefix + ".bn1_gamma", l.bn1_gamma);
    f(prefix + ".bn1_beta", l.bn1_beta);
    f(prefix + ".bn2_gamma", l.bn2_gamma);
    f(prefix + ".bn2_beta", l.bn2_beta);
  };
  for (std::size_t i = 0; i < edge_layers.size(); ++i) {
    visit_layer("edge_layer" + std::to_string(i), edge_layers[i]);
  }
  for (std::size_t i = 0; i < req_layers.size(); ++i) {
    visit_layer("req_layer" + std::to_string(i), req_layers[i]);
  }
  f("ctx_wx", ctx_wx);
  f("ctx_wy", ctx_wy);
  f("ctx_wv", ctx_wv);
  f("ctx_wo", ctx_wo);
  f("pol_wx", pol_wx);
  f("pol_wy", pol_wy);
}

template <typename F>
void ModelParams::for_each_tensor(F&& f) const {
  const_cast<ModelParams*>(this)->for_each_tensor(
      [&](const std::string& name, Eigen::MatrixXd& m) {
        f(name, static_cast<const Eigen::MatrixXd&>(m));
      });
}

}  // namespace corais
