/*
 * Copyright 2026 The graphrec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "graphrec/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace graphrec {

namespace {

constexpr char kMagic[8] = {'G', 'R', 'E', 'C', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("checkpoint: truncated file");
  return value;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open '" + path + "' for writing");

  const auto& model = ckpt.model;
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::uint32_t>(model.num_users));
  write_pod(out, static_cast<std::uint32_t>(model.num_items));
  write_pod(out, static_cast<std::uint32_t>(model.dim()));
  write_pod(out, static_cast<std::uint32_t>(model.depth));
  write_pod(out, static_cast<std::uint8_t>(ckpt.strategy));
  write_pod(out, static_cast<std::uint8_t>(ckpt.normalization));
  write_pod(out, static_cast<std::uint16_t>(0));
  write_pod(out, ckpt.seed);
  for (int k = 0; k <= model.depth; ++k) write_pod(out, static_cast<double>(model.layer_coeffs[k]));
  // Row-major storage matches the on-disk contract directly.
  out.write(reinterpret_cast<const char*>(model.embeddings.data()),
            static_cast<std::streamsize>(sizeof(double) * model.embeddings.size()));
  if (!out) throw std::runtime_error("checkpoint: write to '" + path + "' failed");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open '" + path + "'");

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("checkpoint: '" + path + "' is not a checkpoint file");
  }
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kVersion) {
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  }

  Checkpoint ckpt;
  auto& model = ckpt.model;
  const auto m = read_pod<std::uint32_t>(in);
  const auto n = read_pod<std::uint32_t>(in);
  const auto d = read_pod<std::uint32_t>(in);
  const auto depth = read_pod<std::uint32_t>(in);
  ckpt.strategy = static_cast<Strategy>(read_pod<std::uint8_t>(in));
  ckpt.normalization = static_cast<Normalization>(read_pod<std::uint8_t>(in));
  read_pod<std::uint16_t>(in);
  ckpt.seed = read_pod<std::uint64_t>(in);

  model.num_users = static_cast<Index>(m);
  model.num_items = static_cast<Index>(n);
  model.depth = static_cast<int>(depth);
  model.layer_coeffs.resize(depth + 1);
  for (std::uint32_t k = 0; k <= depth; ++k) model.layer_coeffs[k] = read_pod<double>(in);

  model.embeddings.resize(static_cast<Index>(m + n), static_cast<Index>(d));
  in.read(reinterpret_cast<char*>(model.embeddings.data()),
          static_cast<std::streamsize>(sizeof(double) * model.embeddings.size()));
  if (!in) throw std::runtime_error("checkpoint: truncated embedding table in '" + path + "'");
  return ckpt;
}

}  // namespace graphrec
