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
#include <vector>

#include "graphrec/graph.hpp"

namespace graphrec {

enum class FileFormat { TsvTriplet, Movielens100k };

inline const char* to_string(FileFormat f) {
  return f == FileFormat::TsvTriplet ? "tsv_triplet" : "movielens_100k";
}

inline FileFormat format_from_string(const std::string& s) {
  if (s == "tsv_triplet") return FileFormat::TsvTriplet;
  if (s == "movielens_100k") return FileFormat::Movielens100k;
  throw std::invalid_argument("unknown format '" + s +
                              "' (expected tsv_triplet|movielens_100k)");
}

// One interaction in raw dataset IDs. Ratings are binarized on load: any
// observed interaction is a positive, its value is discarded.
struct RawEdge {
  std::string user;
  std::string item;
};

// tsv_triplet: whitespace-separated "user item [rating] [timestamp]" lines,
// '#'-prefixed comments skipped. movielens_100k: the canonical 4-column
// tab-separated u.data layout. Malformed lines raise with their number.
std::vector<RawEdge> load_interactions(const std::string& path, FileFormat format);

struct FilteredInteractions {
  EdgeList edges;                     // dense indices, input order preserved
  std::vector<std::string> user_ids;  // dense index -> raw id
  std::vector<std::string> item_ids;
  int threshold = 0;

  Index num_users() const { return static_cast<Index>(user_ids.size()); }
  Index num_items() const { return static_cast<Index>(item_ids.size()); }
};

// Deduplicates, then iteratively drops users and items with fewer than
// `threshold` interactions until the degree condition is a fixed point.
// Dense indices are assigned by first appearance in the surviving list.
FilteredInteractions filter_min_degree(const std::vector<RawEdge>& raw, int threshold = 10);

// Relative-popularity propensity per item over an edge list:
//   p_i = sqrt(count_i / max_j count_j).
// Every item in [0, num_items) must occur at least once.
std::vector<double> relative_popularity(const EdgeList& edges, Index num_items);

struct SplitResult {
  EdgeList train;
  EdgeList validation;
  EdgeList test;
  long repair_moved = 0;  // edges returned to train to kill cold starts
};

// The holdout selection order: a weighted random permutation of edge
// indices in which any prefix is distributed as sequential weighted
// sampling without replacement, with per-interaction weight 1/p_item.
// pseudo_unbiased_split holds out prefixes of exactly this order.
std::vector<std::size_t> weighted_sample_order(const EdgeList& edges,
                                               const std::vector<double>& item_propensity,
                                               std::uint64_t seed);

// Weighted holdout: each interaction enters the held-out sets with
// probability proportional to the inverse propensity of its item, via an
// exponential race (equivalent to sequential weighted sampling without
// replacement). Test is drawn first, validation from the remainder. A
// repair pass then moves any held-out interaction whose user or item never
// occurs in train back into train, so the three parts partition the input
// and every evaluated node has training signal.
SplitResult pseudo_unbiased_split(const EdgeList& edges,
                                  const std::vector<double>& item_propensity,
                                  double test_frac, double val_frac, std::uint64_t seed);

// On-disk split bundle: train/val/test pair files, raw-id maps and a JSON
// manifest. Files are plain TSV so they diff cleanly.
struct DatasetBundle {
  std::vector<std::string> user_ids;
  std::vector<std::string> item_ids;
  EdgeList train;
  EdgeList validation;
  EdgeList test;

  Index num_users() const { return static_cast<Index>(user_ids.size()); }
  Index num_items() const { return static_cast<Index>(item_ids.size()); }
};

void save_bundle(const std::string& dir, const DatasetBundle& bundle,
                 const std::string& manifest_json);
DatasetBundle load_bundle(const std::string& dir);

}  // namespace graphrec
