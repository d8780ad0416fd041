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

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphrec/types.hpp"

namespace graphrec {

enum class Side { User, Item };

using EdgeList = std::vector<std::pair<Index, Index>>;

// Immutable user-item bipartite interaction graph, stored as two CSR
// structures (user rows and item rows) over the same binary edge set.
// Columns within a row are strictly ascending and duplicate-free, so two
// graphs built from the same edge set compare equal structurally no matter
// the input order. Safe for concurrent reads once built.
class InteractionGraph {
 public:
  Index num_users() const { return num_users_; }
  Index num_items() const { return num_items_; }
  Index num_edges() const { return num_edges_; }

  Index user_degree(Index u) const { return user_offsets_[u + 1] - user_offsets_[u]; }
  Index item_degree(Index i) const { return item_offsets_[i + 1] - item_offsets_[i]; }

  // Items interacted with by user u, ascending.
  std::span<const Index> items_of(Index u) const {
    return {user_cols_.data() + user_offsets_[u],
            static_cast<std::size_t>(user_degree(u))};
  }

  // Users who interacted with item i, ascending.
  std::span<const Index> users_of(Index i) const {
    return {item_cols_.data() + item_offsets_[i],
            static_cast<std::size_t>(item_degree(i))};
  }

  const std::vector<Index>& user_offsets() const { return user_offsets_; }
  const std::vector<Index>& user_cols() const { return user_cols_; }
  const std::vector<Index>& item_offsets() const { return item_offsets_; }
  const std::vector<Index>& item_cols() const { return item_cols_; }

  bool has_edge(Index u, Index i) const {
    const auto row = items_of(u);
    return std::binary_search(row.begin(), row.end(), i);
  }

  EdgeList edges() const {
    EdgeList out;
    out.reserve(num_edges_);
    for (Index u = 0; u < num_users_; ++u)
      for (Index i : items_of(u)) out.emplace_back(u, i);
    return out;
  }

  friend InteractionGraph build_graph(const EdgeList&, Index, Index);

 private:
  InteractionGraph() = default;

  Index num_users_ = 0;
  Index num_items_ = 0;
  Index num_edges_ = 0;
  std::vector<Index> user_offsets_, user_cols_;
  std::vector<Index> item_offsets_, item_cols_;
};

// Builds both orientations from a (user, item) edge list. Duplicate pairs
// collapse to a single binary edge. Out-of-range indices and nodes that end
// up with no edges are hard errors: every aggregation formula downstream
// divides by a degree or a normalizer.
inline InteractionGraph build_graph(const EdgeList& edges, Index num_users, Index num_items) {
  if (num_users <= 0 || num_items <= 0) {
    throw std::invalid_argument("build_graph: user and item counts must be positive");
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, i] = edges[e];
    if (u < 0 || u >= num_users || i < 0 || i >= num_items) {
      throw std::invalid_argument("build_graph: edge #" + std::to_string(e) + " = (" +
                                  std::to_string(u) + ", " + std::to_string(i) +
                                  ") out of range for " + std::to_string(num_users) +
                                  " users x " + std::to_string(num_items) + " items");
    }
  }

  EdgeList sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  InteractionGraph g;
  g.num_users_ = num_users;
  g.num_items_ = num_items;
  g.num_edges_ = static_cast<Index>(sorted.size());

  g.user_offsets_.assign(static_cast<std::size_t>(num_users) + 1, 0);
  g.item_offsets_.assign(static_cast<std::size_t>(num_items) + 1, 0);
  for (const auto& [u, i] : sorted) {
    ++g.user_offsets_[u + 1];
    ++g.item_offsets_[i + 1];
  }
  for (Index u = 0; u < num_users; ++u) g.user_offsets_[u + 1] += g.user_offsets_[u];
  for (Index i = 0; i < num_items; ++i) g.item_offsets_[i + 1] += g.item_offsets_[i];

  std::vector<Index> isolated;
  for (Index u = 0; u < num_users; ++u)
    if (g.user_offsets_[u + 1] == g.user_offsets_[u]) isolated.push_back(u);
  if (!isolated.empty()) {
    std::string msg = "build_graph: isolated users:";
    for (Index u : isolated) msg += " " + std::to_string(u);
    throw std::invalid_argument(msg);
  }
  for (Index i = 0; i < num_items; ++i)
    if (g.item_offsets_[i + 1] == g.item_offsets_[i]) isolated.push_back(i);
  if (!isolated.empty()) {
    std::string msg = "build_graph: isolated items:";
    for (Index i : isolated) msg += " " + std::to_string(i);
    throw std::invalid_argument(msg);
  }

  g.user_cols_.resize(sorted.size());
  g.item_cols_.resize(sorted.size());
  std::vector<Index> cursor(g.item_offsets_.begin(), g.item_offsets_.end() - 1);
  std::size_t k = 0;
  // sorted is ordered by (user, item): user rows fill in ascending column
  // order directly, and item rows receive users in ascending order too.
  for (const auto& [u, i] : sorted) {
    g.user_cols_[k++] = i;
    g.item_cols_[cursor[i]++] = u;
  }
  return g;
}

// Canonical neighbor row of a node on the given side.
inline std::span<const Index> neighbors(const InteractionGraph& g, Index node, Side side) {
  if (side == Side::User) {
    if (node < 0 || node >= g.num_users()) {
      throw std::out_of_range("neighbors: user " + std::to_string(node) + " out of range");
    }
    return g.items_of(node);
  }
  if (node < 0 || node >= g.num_items()) {
    throw std::out_of_range("neighbors: item " + std::to_string(node) + " out of range");
  }
  return g.users_of(node);
}

}  // namespace graphrec
