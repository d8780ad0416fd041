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
#pragma once

#include <cstdint>
#include <string>

#include "graphrec/model.hpp"

namespace graphrec {

// Trained model plus the training provenance that travels with it.
struct Checkpoint {
  EmbeddingModel<double> model;
  Strategy strategy = Strategy::Mean;
  Normalization normalization = Normalization::Symmetric;
  std::uint64_t seed = 0;
};

// Binary layout (little-endian):
//   magic "GRECCKPT", u32 version, u32 M, u32 N, u32 d, u32 K,
//   u8 strategy, u8 normalization, u16 reserved, u64 seed,
//   f64 alpha[K+1], f64 embeddings[(M+N)*d] row-major.
// Save/load round-trips bit-exactly.
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace graphrec
