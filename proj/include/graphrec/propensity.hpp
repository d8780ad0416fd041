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
#include <vector>

#include "graphrec/graph.hpp"

namespace graphrec {

// Per-item observation propensity estimated from relative popularity:
//   p_i = sqrt(deg(i) / max_j deg(j)),  p_i in (0, 1].
// The estimate is item-only: it applies to every interaction of item i.
struct PropensityTable {
  std::vector<double> item_propensity;
  Index max_popularity = 0;

  Index num_items() const { return static_cast<Index>(item_propensity.size()); }
};

// Estimate propensity from the training graph. `floor`, when positive,
// clips propensities from below; it is off by default and exists for
// synthetic stress tests with extreme popularity skew.
inline PropensityTable estimate_propensity(const InteractionGraph& graph, double floor = 0.0) {
  PropensityTable table;
  table.item_propensity.resize(graph.num_items());
  Index max_deg = 0;
  for (Index i = 0; i < graph.num_items(); ++i) max_deg = std::max(max_deg, graph.item_degree(i));
  table.max_popularity = max_deg;
  for (Index i = 0; i < graph.num_items(); ++i) {
    double p = std::sqrt(static_cast<double>(graph.item_degree(i)) / static_cast<double>(max_deg));
    if (floor > 0.0) p = std::max(p, floor);
    table.item_propensity[i] = p;
  }
  return table;
}

// 1 / p_i; always >= 1 (equality for the most popular items).
inline double inverse_weight(const PropensityTable& table, Index item) {
  if (item < 0 || item >= table.num_items()) {
    throw std::out_of_range("inverse_weight: item " + std::to_string(item) + " out of range");
  }
  return 1.0 / table.item_propensity[item];
}

// Sum of inverse propensities over a node's neighbors. For a user this is
// the normalizer of inverse-propensity aggregation; for an item every
// incident edge carries the item's own weight, so the sum is deg(i)/p_i.
// Both match the row sums of the weighted bipartite adjacency whose (u, i)
// and (i, u) entries are 1/p_i.
inline double normalizer_z(const InteractionGraph& graph, const PropensityTable& table,
                           Index node, Side side) {
  double z = 0.0;
  if (side == Side::User) {
    for (Index i : neighbors(graph, node, Side::User)) z += inverse_weight(table, i);
  } else {
    const auto users = neighbors(graph, node, Side::Item);
    z = static_cast<double>(users.size()) * inverse_weight(table, node);
  }
  return z;
}

}  // namespace graphrec
