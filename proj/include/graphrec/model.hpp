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

#include <cmath>
#include <stdexcept>

#include "graphrec/aggregation.hpp"
#include "graphrec/rng.hpp"
#include "graphrec/types.hpp"

namespace graphrec {

// Learnable layer-0 embedding table plus the propagation recipe. Users are
// rows 0..M-1, items rows M..M+N-1. Final representations are the
// coefficient-weighted sum over propagation layers 0..K.
template <typename Scalar = double>
struct EmbeddingModel {
  MatrixX<Scalar> embeddings;   // (M+N) x d, layer 0
  Index num_users = 0;
  Index num_items = 0;
  int depth = 0;                // K
  VectorX<Scalar> layer_coeffs; // K+1 entries, sum to 1

  Index dim() const { return static_cast<Index>(embeddings.cols()); }
  Index num_nodes() const { return num_users + num_items; }
};

template <typename Scalar = double>
VectorX<Scalar> uniform_layer_coeffs(int depth) {
  return VectorX<Scalar>::Constant(depth + 1, Scalar(1) / Scalar(depth + 1));
}

template <typename Scalar>
void validate_layer_coeffs(const VectorX<Scalar>& coeffs, int depth) {
  if (coeffs.size() != depth + 1) {
    throw std::invalid_argument("layer coefficients: expected " + std::to_string(depth + 1) +
                                " values, got " + std::to_string(coeffs.size()));
  }
  if ((coeffs.array() < Scalar(0)).any()) {
    throw std::invalid_argument("layer coefficients must be nonnegative");
  }
  if (std::abs(static_cast<double>(coeffs.sum()) - 1.0) > 1e-12) {
    throw std::invalid_argument("layer coefficients must sum to 1");
  }
}

// Fresh model with i.i.d. normal(0, scale) entries from a seeded stream.
// Identical arguments give a bitwise-identical table.
template <typename Scalar = double>
EmbeddingModel<Scalar> init_embeddings(Index num_users, Index num_items, Index dim,
                                       std::uint64_t seed, int depth = 3,
                                       double scale = 0.1) {
  if (dim < 1) throw std::invalid_argument("init_embeddings: dim must be >= 1");
  if (depth < 0) throw std::invalid_argument("init_embeddings: depth must be >= 0");
  EmbeddingModel<Scalar> model;
  model.num_users = num_users;
  model.num_items = num_items;
  model.depth = depth;
  model.layer_coeffs = uniform_layer_coeffs<Scalar>(depth);
  model.embeddings.resize(num_users + num_items, dim);
  Rng rng(seed);
  for (Index r = 0; r < model.embeddings.rows(); ++r)
    for (Index c = 0; c < dim; ++c)
      model.embeddings(r, c) = static_cast<Scalar>(scale * rng.next_normal());
  return model;
}

// Runs K propagation steps and combines the layers:
//   H^0 = E,  H^l = A H^{l-1},  out = sum_k alpha_k H^k.
template <typename Scalar>
MatrixX<Scalar> forward(const EmbeddingModel<Scalar>& model,
                        const AggregationOperator<Scalar>& op) {
  if (op.dimension() != model.num_nodes()) {
    throw std::invalid_argument("forward: operator dimension " + std::to_string(op.dimension()) +
                                " != model nodes " + std::to_string(model.num_nodes()));
  }
  validate_layer_coeffs(model.layer_coeffs, model.depth);
  MatrixX<Scalar> combined = model.layer_coeffs[0] * model.embeddings;
  MatrixX<Scalar> current = model.embeddings;
  MatrixX<Scalar> next;
  for (int layer = 1; layer <= model.depth; ++layer) {
    multiply_into(op.matrix, current, next);
    current.swap(next);
    combined.noalias() += model.layer_coeffs[layer] * current;
  }
  return combined;
}

// Relevance of item i for user u: dot product of their final rows.
template <typename Scalar>
Scalar score(const Eigen::Ref<const MatrixX<Scalar>>& final_embeddings, Index user, Index item,
             Index num_users) {
  return final_embeddings.row(user).dot(final_embeddings.row(num_users + item));
}

// Re-runs forward with a different operator over the frozen layer-0 table.
// No parameters change: this is how a model trained under one aggregation
// strategy is served under another.
template <typename Scalar>
MatrixX<Scalar> swap_operator_inference(const EmbeddingModel<Scalar>& model,
                                        const AggregationOperator<Scalar>& op_eval) {
  return forward(model, op_eval);
}

}  // namespace graphrec
