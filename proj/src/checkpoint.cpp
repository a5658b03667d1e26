// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/checkpoint.hpp"

#include <cstring>
#include <fstream>

namespace corais {

namespace {

constexpr char kMagic[8] = {'C', 'R', 'S', 'C', 'K', 'P', 'T', '1'};

template <typename T>
void write_pod(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error("checkpoint: truncated file");
  return value;
}

void write_tensors(std::ostream& out, const ModelParams& params) {
  std::uint32_t count = 0;
  params.for_each_tensor(
      [&](const std::string&, const Eigen::MatrixXd&) { ++count; });
  write_pod(out, count);
  params.for_each_tensor([&](const std::string& name,
                             const Eigen::MatrixXd& m) {
    write_pod(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_pod(out, static_cast<std::uint32_t>(m.rows()));
    write_pod(out, static_cast<std::uint32_t>(m.cols()));
    out.write(reinterpret_cast<const char*>(m.data()),
              static_cast<std::streamsize>(sizeof(double) * m.size()));
  });
}

void read_tensors(std::istream& in, ModelParams& params) {
  const std::uint32_t count = read_pod<std::uint32_t>(in);
  std::uint32_t expected = 0;
  params.for_each_tensor(
      [&](const std::string&, const Eigen::MatrixXd&) { ++expected; });
  if (count != expected) {
    throw Error("checkpoint: tensor count mismatch");
  }
  params.for_each_tensor([&](const std::string& name, Eigen::MatrixXd& m) {
    const std::uint32_t name_len = read_pod<std::uint32_t>(in);
    std::string stored(name_len, '\0');
    in.read(stored.data(), name_len);
    if (!in || stored != name) {
      throw Error("checkpoint: expected tensor " + name + ", found " +
                  stored);
    }
    const std::uint32_t rows = read_pod<std::uint32_t>(in);
    const std::uint32_t cols = read_pod<std::uint32_t>(in);
    if (rows != static_cast<std::uint32_t>(m.rows()) ||
        cols != static_cast<std::uint32_t>(m.cols())) {
      throw Error("checkpoint: shape mismatch for tensor " + name);
    }
    in.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(sizeof(double) * m.size()));
    if (!in) throw Error("checkpoint: truncated tensor " + name);
  });
}

}  // namespace

ModelParams shaped_params(const ModelConfig& cfg) {
  ModelParams p = ModelParams::init(cfg, 0);
  p.for_each_tensor([](const std::string&, Eigen::MatrixXd& m) {
    m.setZero();
  });
  return p;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("checkpoint: cannot open " + path + " for writing");
  out.write(kMagic, sizeof(kMagic));
  write_pod<std::uint32_t>(out, 1);  // container version
  const ModelConfig& c = ckpt.config;
  write_pod<std::int32_t>(out, c.d_h);
  write_pod<std::int32_t>(out, c.edge_layers);
  write_pod<std::int32_t>(out, c.request_layers);
  write_pod<std::int32_t>(out, c.heads);
  write_pod<std::int32_t>(out, c.ff_hidden);
  write_pod<std::int32_t>(out, c.phi_degree);
  write_pod<double>(out, c.clip_c);
  write_pod<std::uint8_t>(out, ckpt.has_optimizer ? 1 : 0);
  write_pod<std::int64_t>(out, ckpt.adam_step);
  write_pod<std::int64_t>(out, ckpt.batches_done);
  write_tensors(out, ckpt.params);
  if (ckpt.has_optimizer) {
    write_tensors(out, ckpt.adam_m);
    write_tensors(out, ckpt.adam_v);
  }
  if (!out) throw Error("checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("checkpoint: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error("checkpoint: bad magic in " + path);
  }
  const std::uint32_t version = read_pod<std::uint32_t>(in);
  if (version != 1) {
    throw Error("checkpoint: unsupported container version " +
                std::to_string(version));
  }
  Checkpoint ckpt;
  ckpt.config.d_h = read_pod<std::int32_t>(in);
  ckpt.config.edge_layers = read_pod<std::int32_t>(in);
  ckpt.config.request_layers = read_pod<std::int32_t>(in);
  ckpt.config.heads = read_pod<std::int32_t>(in);
  ckpt.config.ff_hidden = read_pod<std::int32_t>(in);
  ckpt.config.phi_degree = read_pod<std::int32_t>(in);
  ckpt.config.clip_c = read_pod<double>(in);
  ckpt.config.validate();
  ckpt.has_optimizer = read_pod<std::uint8_t>(in) != 0;
  ckpt.adam_step = read_pod<std::int64_t>(in);
  ckpt.batches_done = read_pod<std::int64_t>(in);
  ckpt.params = shaped_params(ckpt.config);
  read_tensors(in, ckpt.params);
  if (ckpt.has_optimizer) {
    ckpt.adam_m = shaped_params(ckpt.config);
    ckpt.adam_v = shaped_params(ckpt.config);
    read_tensors(in, ckpt.adam_m);
    read_tensors(in, ckpt.adam_v);
  }
  return ckpt;
}

}  // namespace corais
