// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "corais/model.hpp"

namespace corais {

namespace {

using detail::BnCache;
using detail::ContextTape;
using detail::LayerTape;

// d(row softmax)/d(scores): per row, p .* (dp - <dp, p>).
Eigen::MatrixXd softmax_rows_backward(const Eigen::MatrixXd& p,
                                      const Eigen::MatrixXd& dp) {
  Eigen::MatrixXd ds(p.rows(), p.cols());
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    const double inner = dp.row(r).dot(p.row(r));
    ds.row(r) =
        (p.row(r).array() * (dp.row(r).array() - inner)).matrix();
  }
  return ds;
}

// Backward through per-channel normalization over the token axis.
Eigen::MatrixXd batch_norm_backward(const Eigen::MatrixXd& dy,
                                    const BnCache& cache,
                                    const Eigen::MatrixXd& gamma,
                                    Eigen::MatrixXd& dgamma,
                                    Eigen::MatrixXd& dbeta) {
  const double inv_t = 1.0 / static_cast<double>(dy.cols());
  dgamma.col(0) += dy.cwiseProduct(cache.xhat).rowwise().sum();
  dbeta.col(0) += dy.rowwise().sum();
  Eigen::MatrixXd dxhat =
      (dy.array().colwise() * gamma.col(0).array()).matrix();
  Eigen::VectorXd mean_dxhat = dxhat.rowwise().sum() * inv_t;
  Eigen::VectorXd mean_dxhat_xhat =
      dxhat.cwiseProduct(cache.xhat).rowwise().sum() * inv_t;
  Eigen::MatrixXd dx = dxhat.colwise() - mean_dxhat;
  dx.array() -= cache.xhat.array().colwise() * mean_dxhat_xhat.array();
  dx.array() = dx.array().colwise() * cache.inv_std.array();
  return dx;
}

// Backward through one encoder layer; accumulates parameter gradients and
// returns the adjoint of the layer input.
Eigen::MatrixXd encoder_layer_backward(const AttentionLayerParams& l,
                                       AttentionLayerParams& g,
                                       const ModelConfig& cfg,
                                       const LayerTape& tape,
                                       const Eigen::MatrixXd& dout) {
  const int dy_dim = cfg.head_dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dy_dim));

  Eigen::MatrixXd dskip2 = batch_norm_backward(dout, tape.bn2, l.bn2_gamma,
                                               g.bn2_gamma, g.bn2_beta);
  // skip2 = x_mid + ff(x_mid)
  Eigen::MatrixXd dx_mid = dskip2;
  g.ff_w2 += dskip2 * tape.ff_act.transpose();
  g.ff_b2.col(0) += dskip2.rowwise().sum();
  Eigen::MatrixXd dact = l.ff_w2.transpose() * dskip2;
  Eigen::MatrixXd dpre =
      (tape.ff_pre.array() > 0.0).select(dact, Eigen::MatrixXd::Zero(
                                                   dact.rows(), dact.cols()));
  g.ff_w1 += dpre * tape.x_mid.transpose();
  g.ff_b1.col(0) += dpre.rowwise().sum();
  dx_mid += l.ff_w1.transpose() * dpre;

  Eigen::MatrixXd dskip1 = batch_norm_backward(dx_mid, tape.bn1, l.bn1_gamma,
                                               g.bn1_gamma, g.bn1_beta);
  // skip1 = x_in + wo * heads_out
  Eigen::MatrixXd dx = dskip1;
  g.wo += dskip1 * tape.heads_out.transpose();
  Eigen::MatrixXd dheads = l.wo.transpose() * dskip1;

  Eigen::MatrixXd dq(tape.q.rows(), tape.q.cols());
  Eigen::MatrixXd dk(tape.k.rows(), tape.k.cols());
  Eigen::MatrixXd dv(tape.v.rows(), tape.v.cols());
  for (int h = 0; h < cfg.heads; ++h) {
    auto qh = tape.q.middleRows(h * dy_dim, dy_dim);
    auto kh = tape.k.middleRows(h * dy_dim, dy_dim);
    auto vh = tape.v.middleRows(h * dy_dim, dy_dim);
    const Eigen::MatrixXd& attn = tape.attn[h];
    Eigen::MatrixXd du = dheads.middleRows(h * dy_dim, dy_dim);
    Eigen::MatrixXd dvh = du * attn;
    Eigen::MatrixXd dattn = du.transpose() * vh;
    Eigen::MatrixXd ds = softmax_rows_backward(attn, dattn) * scale;
    dq.middleRows(h * dy_dim, dy_dim) = kh * ds.transpose();
    dk.middleRows(h * dy_dim, dy_dim) = qh * ds;
    dv.middleRows(h * dy_dim, dy_dim) = dvh;
  }
  g.wq += dq * tape.x_in.transpose();
  g.wk += dk * tape.x_in.transpose();
  g.wv += dv * tape.x_in.transpose();
  dx += l.wq.transpose() * dq;
  dx += l.wk.transpose() * dk;
  dx += l.wv.transpose() * dv;
  return dx;
}

}  // namespace

ModelParams backward(const ModelParams& params, const ModelConfig& cfg,
                     const ForwardPass& pass, const Eigen::MatrixXd& dprobs) {
  ModelParams g = ModelParams::zeros_like(params);
  const int z_count = static_cast<int>(pass.probs.cols());
  const int q_count = static_cast<int>(pass.probs.rows());
  if (z_count == 0) return g;
  if (dprobs.rows() != q_count || dprobs.cols() != z_count) {
    throw Error("backward: adjoint shape does not match the policy matrix");
  }

  // Policy softmax over edges (columns of probs sum to 1).
  Eigen::MatrixXd dimp(q_count, z_count);
  for (int z = 0; z < z_count; ++z) {
    const double inner = dprobs.col(z).dot(pass.probs.col(z));
    dimp.col(z) =
        (pass.probs.col(z).array() * (dprobs.col(z).array() - inner))
            .matrix();
  }
  // imp = C * tanh(scores); scores = px^T py / sqrt(d_h)
  Eigen::MatrixXd dscores =
      (dimp.array() *
       (cfg.clip_c - pass.imp.array().square() / cfg.clip_c))
          .matrix();
  dscores /= std::sqrt(static_cast<double>(cfg.d_h));
  Eigen::MatrixXd dpx = pass.py * dscores.transpose();
  Eigen::MatrixXd dpy = pass.px * dscores;

  g.pol_wx += dpx * pass.ctx.ctx.transpose();
  Eigen::MatrixXd dctx = params.pol_wx.transpose() * dpx;
  g.pol_wy += dpy * pass.req_final.transpose();
  Eigen::MatrixXd dreq = params.pol_wy.transpose() * dpy;

  // Context decoder.
  const ContextTape& ctx = pass.ctx;
  const int dy_dim = cfg.head_dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dy_dim));
  g.ctx_wo += dctx * ctx.heads_out.transpose();
  Eigen::MatrixXd dheads = params.ctx_wo.transpose() * dctx;
  Eigen::MatrixXd dcx(cfg.d_h, q_count);
  Eigen::MatrixXd dcy(cfg.d_h, z_count);
  Eigen::MatrixXd dcv(cfg.d_h, z_count);
  for (int h = 0; h < cfg.heads; ++h) {
    auto xq = ctx.cx.middleRows(h * dy_dim, dy_dim);
    auto yz = ctx.cy.middleRows(h * dy_dim, dy_dim);
    auto vz = ctx.cv.middleRows(h * dy_dim, dy_dim);
    const Eigen::MatrixXd& attn = ctx.attn[h];
    Eigen::MatrixXd du = dheads.middleRows(h * dy_dim, dy_dim);
    dcv.middleRows(h * dy_dim, dy_dim) = du * attn;
    Eigen::MatrixXd dattn = du.transpose() * vz;
    Eigen::MatrixXd ds = softmax_rows_backward(attn, dattn) * scale;
    dcx.middleRows(h * dy_dim, dy_dim) = yz * ds.transpose();
    dcy.middleRows(h * dy_dim, dy_dim) = xq * ds;
  }
  g.ctx_wx += dcx * ctx.fc.transpose();
  Eigen::MatrixXd dfc = params.ctx_wx.transpose() * dcx;
  g.ctx_wy += dcy * pass.req_final.transpose();
  dreq += params.ctx_wy.transpose() * dcy;
  g.ctx_wv += dcv * pass.req_final.transpose();
  dreq += params.ctx_wv.transpose() * dcv;

  // Split the concatenated context input; pooled channels route to the
  // argmax token recorded in the forward pass.
  Eigen::MatrixXd dedge = Eigen::MatrixXd::Zero(cfg.d_h, q_count);
  for (int c = 0; c < cfg.d_h; ++c) {
    const double d_edge_pool = dfc.row(c).sum();
    dedge(c, ctx.edge_pool_idx[c]) += d_edge_pool;
    const double d_req_pool = dfc.row(cfg.d_h + c).sum();
    dreq(c, ctx.req_pool_idx[c]) += d_req_pool;
  }
  dedge += dfc.middleRows(2 * cfg.d_h, cfg.d_h);

  for (int i = cfg.request_layers - 1; i >= 0; --i) {
    dreq = encoder_layer_backward(params.req_layers[i], g.req_layers[i], cfg,
                                  pass.req_tape[i], dreq);
  }
  g.req_in_w += dreq * pass.req_tokens.transpose();
  g.req_in_b.col(0) += dreq.rowwise().sum();

  for (int i = cfg.edge_layers - 1; i >= 0; --i) {
    dedge = encoder_layer_backward(params.edge_layers[i], g.edge_layers[i],
                                   cfg, pass.edge_tape[i], dedge);
  }
  g.edge_in_w += dedge * pass.edge_tokens.transpose();
  g.edge_in_b.col(0) += dedge.rowwise().sum();

  return g;
}

}  // namespace corais
