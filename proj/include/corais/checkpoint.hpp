// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "corais/model.hpp"

namespace corais {

/// Versioned binary container for a trained model: config, all weight
/// tensors with shape headers, and (while training) the Adam state needed
/// for bit-exact resumption. Little-endian throughout.
struct Checkpoint {
  ModelConfig config;
  ModelParams params;
  bool has_optimizer = false;
  ModelParams adam_m, adam_v;
  std::int64_t adam_step = 0;
  std::int64_t batches_done = 0;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

/// Zero-filled parameters with the shapes demanded by `cfg`.
ModelParams shaped_params(const ModelConfig& cfg);

}  // namespace corais
