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
#include <string>

#include "graphrec/graph.hpp"
#include "graphrec/propensity.hpp"
#include "graphrec/sparse.hpp"

namespace graphrec {

// How an edge's raw aggregation weight is chosen. The item endpoint of the
// edge decides the weight in all three cases:
//   Mean       -> 1
//   Propensity -> p_i      (popular neighbors emphasized)
//   Navip      -> 1 / p_i  (rare neighbors emphasized)
enum class Strategy { Mean, Propensity, Navip };

// Symmetric:  w / sqrt(wdeg(row) * wdeg(col))
// RandomWalk: w / wdeg(row)   (rows sum to one)
// where wdeg is the node's sum of raw incident weights.
enum class Normalization { Symmetric, RandomWalk };

inline Normalization default_normalization(Strategy s) {
  return s == Strategy::Mean ? Normalization::Symmetric : Normalization::RandomWalk;
}

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Mean: return "mean";
    case Strategy::Propensity: return "propensity";
    case Strategy::Navip: return "navip";
  }
  return "?";
}

inline const char* to_string(Normalization n) {
  return n == Normalization::Symmetric ? "symmetric" : "random-walk";
}

inline Strategy strategy_from_string(const std::string& s) {
  if (s == "mean") return Strategy::Mean;
  if (s == "propensity") return Strategy::Propensity;
  if (s == "navip") return Strategy::Navip;
  throw std::invalid_argument("unknown strategy '" + s + "' (expected mean|propensity|navip)");
}

inline Normalization normalization_from_string(const std::string& s) {
  if (s == "symmetric") return Normalization::Symmetric;
  if (s == "random-walk") return Normalization::RandomWalk;
  throw std::invalid_argument("unknown normalization '" + s +
                              "' (expected symmetric|random-walk)");
}

// One propagation operator over the joint node set: users occupy rows
// 0..M-1, items rows M..M+N-1. The sparsity pattern is exactly the
// bipartite edge set in both directions; the diagonal is empty and every
// stored weight is strictly positive. Immutable once built.
template <typename Scalar = double>
struct AggregationOperator {
  Strategy strategy = Strategy::Mean;
  Normalization normalization = Normalization::Symmetric;
  Index num_users = 0;
  Index num_items = 0;
  SparseRowMatrix<Scalar> matrix;

  Index dimension() const { return num_users + num_items; }
};

namespace detail {

inline double raw_edge_weight(Strategy s, const PropensityTable* table, Index item) {
  switch (s) {
    case Strategy::Mean: return 1.0;
    case Strategy::Propensity: return table->item_propensity[item];
    case Strategy::Navip: return 1.0 / table->item_propensity[item];
  }
  return 1.0;
}

}  // namespace detail

// Builds the weighted propagation operator for one strategy/normalization
// pair. `table` is required for Propensity and Navip and ignored for Mean.
template <typename Scalar = double>
AggregationOperator<Scalar> build_operator(const InteractionGraph& graph,
                                           const PropensityTable* table, Strategy strategy,
                                           Normalization normalization) {
  if (strategy != Strategy::Mean && table == nullptr) {
    throw std::invalid_argument(std::string("build_operator: strategy '") + to_string(strategy) +
                                "' requires a propensity table");
  }
  if (table != nullptr && table->num_items() != graph.num_items() &&
      strategy != Strategy::Mean) {
    throw std::invalid_argument("build_operator: propensity table covers " +
                                std::to_string(table->num_items()) + " items, graph has " +
                                std::to_string(graph.num_items()));
  }

  const Index m = graph.num_users();
  const Index n = graph.num_items();
  const Index dim = m + n;

  // Weighted degree of every node under the raw weights. The item endpoint
  // of an edge determines the raw weight for both orientations.
  std::vector<double> wdeg(dim, 0.0);
  for (Index u = 0; u < m; ++u) {
    double s = 0.0;
    for (Index i : graph.items_of(u)) s += detail::raw_edge_weight(strategy, table, i);
    wdeg[u] = s;
  }
  for (Index i = 0; i < n; ++i) {
    wdeg[m + i] = static_cast<double>(graph.item_degree(i)) *
                  detail::raw_edge_weight(strategy, table, i);
  }

  AggregationOperator<Scalar> op;
  op.strategy = strategy;
  op.normalization = normalization;
  op.num_users = m;
  op.num_items = n;

  SparseRowMatrix<Scalar>& a = op.matrix;
  a.rows = dim;
  a.cols = dim;
  a.offsets.resize(static_cast<std::size_t>(dim) + 1);
  a.col_idx.resize(2 * static_cast<std::size_t>(graph.num_edges()));
  a.values.resize(a.col_idx.size());

  a.offsets[0] = 0;
  for (Index u = 0; u < m; ++u) a.offsets[u + 1] = a.offsets[u] + graph.user_degree(u);
  for (Index i = 0; i < n; ++i) a.offsets[m + i + 1] = a.offsets[m + i] + graph.item_degree(i);

  Index k = 0;
  for (Index u = 0; u < m; ++u) {
    for (Index i : graph.items_of(u)) {
      const double w = detail::raw_edge_weight(strategy, table, i);
      const double norm = normalization == Normalization::RandomWalk
                              ? w / wdeg[u]
                              : w / std::sqrt(wdeg[u] * wdeg[m + i]);
      a.col_idx[k] = m + i;
      a.values[k] = static_cast<Scalar>(norm);
      ++k;
    }
  }
  for (Index i = 0; i < n; ++i) {
    const double w = detail::raw_edge_weight(strategy, table, i);
    for (Index u : graph.users_of(i)) {
      const double norm = normalization == Normalization::RandomWalk
                              ? w / wdeg[m + i]
                              : w / std::sqrt(wdeg[m + i] * wdeg[u]);
      a.col_idx[k] = u;
      a.values[k] = static_cast<Scalar>(norm);
      ++k;
    }
  }
  return op;
}

// One propagation step: returns A * H without touching the input.
template <typename Scalar>
MatrixX<Scalar> propagate(const AggregationOperator<Scalar>& op,
                          const MatrixX<Scalar>& embeddings) {
  return multiply(op.matrix, embeddings);
}

}  // namespace graphrec
