// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/model.hpp"

#include <algorithm>
#include <cmath>

#include "corais/rng.hpp"

namespace corais {

void ModelConfig::validate() const {
  if (d_h < 1 || edge_layers < 0 || request_layers < 0 || heads < 1 ||
      ff_hidden < 1 || phi_degree < 0) {
    throw Error("model config: all dimensions must be positive");
  }
  if (d_h % heads != 0) {
    throw Error("model config: d_h must be divisible by the head count");
  }
  if (!(clip_c > 0.0)) {
    throw Error("model config: clip constant must be positive");
  }
}

std::vector<Eigen::MatrixXd*> ModelParams::tensors() {
  std::vector<Eigen::MatrixXd*> out;
  for_each_tensor(
      [&](const std::string&, Eigen::MatrixXd& m) { out.push_back(&m); });
  return out;
}

std::vector<std::string> ModelParams::tensor_names() const {
  std::vector<std::string> out;
  for_each_tensor(
      [&](const std::string& name, const Eigen::MatrixXd&) {
        out.push_back(name);
      });
  return out;
}

std::int64_t ModelParams::parameter_count() const {
  std::int64_t count = 0;
  for_each_tensor([&](const std::string&, const Eigen::MatrixXd& m) {
    count += static_cast<std::int64_t>(m.size());
  });
  return count;
}

ModelParams ModelParams::zeros_like(const ModelParams& other) {
  ModelParams out = other;
  out.for_each_tensor([](const std::string&, Eigen::MatrixXd& m) {
    m.setZero();
  });
  return out;
}

namespace {

void fill_uniform(Eigen::MatrixXd& m, double bound, Rng& rng) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      m(r, c) = rng.next_uniform(-bound, bound);
    }
  }
}

// Weight and bias of one linear map, initialized from the fan-in.
void init_linear(Eigen::MatrixXd& w, Eigen::MatrixXd* b, int rows, int cols,
                 Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
  w.resize(rows, cols);
  fill_uniform(w, bound, rng);
  if (b) {
    b->resize(rows, 1);
    fill_uniform(*b, bound, rng);
  }
}

AttentionLayerParams init_layer(const ModelConfig& cfg, Rng& rng) {
  AttentionLayerParams l;
  init_linear(l.wq, nullptr, cfg.d_h, cfg.d_h, rng);
  init_linear(l.wk, nullptr, cfg.d_h, cfg.d_h, rng);
  init_linear(l.wv, nullptr, cfg.d_h, cfg.d_h, rng);
  init_linear(l.wo, nullptr, cfg.d_h, cfg.d_h, rng);
  init_linear(l.ff_w1, &l.ff_b1, cfg.ff_hidden, cfg.d_h, rng);
  init_linear(l.ff_w2, &l.ff_b2, cfg.d_h, cfg.ff_hidden, rng);
  l.bn1_gamma = Eigen::MatrixXd::Ones(cfg.d_h, 1);
  l.bn1_beta = Eigen::MatrixXd::Zero(cfg.d_h, 1);
  l.bn2_gamma = Eigen::MatrixXd::Ones(cfg.d_h, 1);
  l.bn2_beta = Eigen::MatrixXd::Zero(cfg.d_h, 1);
  return l;
}

}  // namespace

ModelParams ModelParams::init(const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng = substream(seed, 0x6d6f64656cull);  // independent of data streams
  ModelParams p;
  init_linear(p.edge_in_w, &p.edge_in_b, cfg.d_h, cfg.edge_feature_dim(), rng);
  init_linear(p.req_in_w, &p.req_in_b, cfg.d_h, ModelConfig::kRequestFeatureDim,
              rng);
  for (int i = 0; i < cfg.edge_layers; ++i) {
    p.edge_layers.push_back(init_layer(cfg, rng));
  }
  for (int i = 0; i < cfg.request_layers; ++i) {
    p.req_layers.push_back(init_layer(cfg, rng));
  }
  init_linear(p.ctx_wx, nullptr, cfg.d_h, 3 * cfg.d_h, rng);
  init_linear(p.ctx_wy, nullptr, cfg.d_h, cfg.d_h, rng);
  init_linear(p.ctx_wv, nullptr, cfg.d_h, cfg.d_h, rng);
  init_linear(p.ctx_wo, nullptr, cfg.d_h, cfg.d_h, rng);
  init_linear(p.pol_wx, nullptr, cfg.d_h, cfg.d_h, rng);
  init_linear(p.pol_wy, nullptr, cfg.d_h, cfg.d_h, rng);
  return p;
}

Eigen::MatrixXd edge_features(const ModelConfig& cfg, const Instance& inst) {
  const int q_count = inst.region_size;
  Eigen::MatrixXd rows(q_count, cfg.edge_feature_dim());
  for (int q = 0; q < q_count; ++q) {
    const EdgeProfile& e = inst.edges[q];
    if (static_cast<int>(e.phi_coeffs.size()) != cfg.phi_degree + 1) {
      throw Error("edge " + std::to_string(q) + " has phi degree " +
                  std::to_string(e.phi_coeffs.size() - 1) +
                  " but the model expects " + std::to_string(cfg.phi_degree));
    }
    int col = 0;
    rows(q, col++) = e.coords.x;
    rows(q, col++) = e.coords.y;
    for (double c : e.phi_coeffs) rows(q, col++) = c;
    rows(q, col++) = static_cast<double>(e.replica_count);
    const WorkloadSnapshot& s = inst.snapshots[q];
    rows(q, col++) = s.c_le;
    rows(q, col++) = s.c_in;
    rows(q, col++) = s.t_in;
    rows(q, col++) = s.b_le;
    rows(q, col++) = s.b_in;
  }
  return rows;
}

Eigen::MatrixXd request_features(const Instance& inst) {
  Eigen::MatrixXd rows(inst.num_requests(), ModelConfig::kRequestFeatureDim);
  for (int z = 0; z < inst.num_requests(); ++z) {
    const RequestSpec& r = inst.requests[z];
    const Coords& src = inst.edges[r.source_edge].coords;
    const Coords& pred = inst.edges[r.predicted_edge].coords;
    rows(z, 0) = src.x;
    rows(z, 1) = src.y;
    rows(z, 2) = r.input_size;
    rows(z, 3) = pred.x;
    rows(z, 4) = pred.y;
    rows(z, 5) = r.output_size;
  }
  return rows;
}

namespace {

using detail::BnCache;
using detail::ContextTape;
using detail::LayerTape;

void check_finite(const Eigen::MatrixXd& m, const char* where) {
  if (!m.allFinite()) {
    throw Error(std::string("numeric overflow in ") + where);
  }
}

constexpr double kBnEpsilon = 1e-5;

// Normalizes each channel (row) over the call's token set; single-instance
// evaluation therefore normalizes over that instance's tokens.
Eigen::MatrixXd batch_norm(const Eigen::MatrixXd& x,
                           const Eigen::MatrixXd& gamma,
                           const Eigen::MatrixXd& beta, BnCache& cache) {
  const double inv_t = 1.0 / static_cast<double>(x.cols());
  cache.mean = x.rowwise().sum() * inv_t;
  Eigen::MatrixXd centered = x.colwise() - cache.mean;
  Eigen::VectorXd var =
      centered.array().square().matrix().rowwise().sum() * inv_t;
  cache.inv_std = (var.array() + kBnEpsilon).rsqrt();
  cache.xhat =
      (centered.array().colwise() * cache.inv_std.array()).matrix();
  Eigen::MatrixXd out =
      ((cache.xhat.array().colwise() * gamma.col(0).array()).colwise() +
       beta.col(0).array())
          .matrix();
  return out;
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& scores) {
  Eigen::MatrixXd out(scores.rows(), scores.cols());
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    const double m = scores.row(r).maxCoeff();
    Eigen::ArrayXd e = (scores.row(r).array() - m).exp();
    out.row(r) = (e / e.sum()).matrix();
  }
  return out;
}

// One encoder layer: multi-head self-attention and a feed-forward sublayer,
// each wrapped in skip connection + batch norm.
Eigen::MatrixXd encoder_layer(const AttentionLayerParams& l,
                              const ModelConfig& cfg, const Eigen::MatrixXd& x,
                              LayerTape& tape) {
  const int dy = cfg.head_dim();
  const Eigen::Index t = x.cols();
  tape.x_in = x;
  tape.q = l.wq * x;
  tape.k = l.wk * x;
  tape.v = l.wv * x;
  tape.attn.resize(cfg.heads);
  tape.heads_out.resize(cfg.d_h, t);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dy));
  for (int h = 0; h < cfg.heads; ++h) {
    auto qh = tape.q.middleRows(h * dy, dy);
    auto kh = tape.k.middleRows(h * dy, dy);
    auto vh = tape.v.middleRows(h * dy, dy);
    Eigen::MatrixXd s = (qh.transpose() * kh) * scale;
    tape.attn[h] = softmax_rows(s);
    tape.heads_out.middleRows(h * dy, dy) = vh * tape.attn[h].transpose();
  }
  tape.skip1 = x + l.wo * tape.heads_out;
  tape.x_mid = batch_norm(tape.skip1, l.bn1_gamma, l.bn1_beta, tape.bn1);
  tape.ff_pre = (l.ff_w1 * tape.x_mid).colwise() + l.ff_b1.col(0);
  tape.ff_act = tape.ff_pre.cwiseMax(0.0);
  tape.skip2 =
      tape.x_mid + ((l.ff_w2 * tape.ff_act).colwise() + l.ff_b2.col(0));
  tape.x_out = batch_norm(tape.skip2, l.bn2_gamma, l.bn2_beta, tape.bn2);
  check_finite(tape.x_out, "encoder layer");
  return tape.x_out;
}

}  // namespace

ForwardPass forward(const ModelParams& params, const ModelConfig& cfg,
                    const Instance& inst) {
  cfg.validate();
  ForwardPass pass;
  const int q_count = inst.region_size;
  const int z_count = inst.num_requests();
  if (z_count == 0) {
    pass.probs.resize(q_count, 0);
    return pass;
  }

  pass.edge_tokens = edge_features(cfg, inst).transpose();
  pass.req_tokens = request_features(inst).transpose();

  Eigen::MatrixXd e =
      (params.edge_in_w * pass.edge_tokens).colwise() +
      params.edge_in_b.col(0);
  pass.edge_tape.resize(cfg.edge_layers);
  for (int i = 0; i < cfg.edge_layers; ++i) {
    e = encoder_layer(params.edge_layers[i], cfg, e, pass.edge_tape[i]);
  }
  pass.edge_final = e;

  Eigen::MatrixXd h =
      (params.req_in_w * pass.req_tokens).colwise() + params.req_in_b.col(0);
  pass.req_tape.resize(cfg.request_layers);
  for (int i = 0; i < cfg.request_layers; ++i) {
    h = encoder_layer(params.req_layers[i], cfg, h, pass.req_tape[i]);
  }
  pass.req_final = h;

  // Context decoder: per-channel max pooling provides the global system and
  // request summaries; edges query the request set.
  ContextTape& ctx = pass.ctx;
  ctx.edge_pool.resize(cfg.d_h);
  ctx.req_pool.resize(cfg.d_h);
  ctx.edge_pool_idx.resize(cfg.d_h);
  ctx.req_pool_idx.resize(cfg.d_h);
  for (int c = 0; c < cfg.d_h; ++c) {
    Eigen::Index idx;
    ctx.edge_pool(c) = pass.edge_final.row(c).maxCoeff(&idx);
    ctx.edge_pool_idx[c] = static_cast<int>(idx);
    ctx.req_pool(c) = pass.req_final.row(c).maxCoeff(&idx);
    ctx.req_pool_idx[c] = static_cast<int>(idx);
  }
  ctx.fc.resize(3 * cfg.d_h, q_count);
  for (int q = 0; q < q_count; ++q) {
    ctx.fc.block(0, q, cfg.d_h, 1) = ctx.edge_pool;
    ctx.fc.block(cfg.d_h, q, cfg.d_h, 1) = ctx.req_pool;
    ctx.fc.block(2 * cfg.d_h, q, cfg.d_h, 1) = pass.edge_final.col(q);
  }
  ctx.cx = params.ctx_wx * ctx.fc;
  ctx.cy = params.ctx_wy * pass.req_final;
  ctx.cv = params.ctx_wv * pass.req_final;
  const int dy = cfg.head_dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dy));
  ctx.attn.resize(cfg.heads);
  ctx.heads_out.resize(cfg.d_h, q_count);
  for (int h2 = 0; h2 < cfg.heads; ++h2) {
    auto xq = ctx.cx.middleRows(h2 * dy, dy);
    auto yz = ctx.cy.middleRows(h2 * dy, dy);
    auto vz = ctx.cv.middleRows(h2 * dy, dy);
    Eigen::MatrixXd s = (xq.transpose() * yz) * scale;
    ctx.attn[h2] = softmax_rows(s);
    ctx.heads_out.middleRows(h2 * dy, dy) = vz * ctx.attn[h2].transpose();
  }
  ctx.ctx = params.ctx_wo * ctx.heads_out;
  check_finite(ctx.ctx, "context decoder");

  pass.px = params.pol_wx * ctx.ctx;
  pass.py = params.pol_wy * pass.req_final;
  pass.scores = (pass.px.transpose() * pass.py) /
                std::sqrt(static_cast<double>(cfg.d_h));
  pass.imp = (cfg.clip_c * pass.scores.array().tanh()).matrix();

  pass.probs.resize(q_count, z_count);
  for (int z = 0; z < z_count; ++z) {
    const double m = pass.imp.col(z).maxCoeff();
    Eigen::ArrayXd ex = (pass.imp.col(z).array() - m).exp();
    pass.probs.col(z) = (ex / ex.sum()).matrix();
  }
  check_finite(pass.probs, "policy softmax");
  return pass;
}

}  // namespace corais
