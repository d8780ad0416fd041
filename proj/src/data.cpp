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
#include "graphrec/data.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "graphrec/rng.hpp"

namespace graphrec {

namespace {

std::vector<std::string> split_whitespace(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool is_unsigned_integer(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

[[noreturn]] void malformed(const std::string& path, std::size_t line_no,
                            const std::string& why) {
  throw std::runtime_error("'" + path + "' line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

std::vector<RawEdge> load_interactions(const std::string& path, FileFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open interactions file '" + path + "'");

  std::vector<RawEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (format == FileFormat::TsvTriplet) {
      const auto tokens = split_whitespace(line);
      if (tokens.empty() || tokens[0][0] == '#') continue;
      if (tokens.size() < 2 || tokens.size() > 4) {
        malformed(path, line_no, "expected 'user item [rating] [timestamp]', got " +
                                     std::to_string(tokens.size()) + " fields");
      }
      edges.push_back({tokens[0], tokens[1]});
    } else {
      if (line.empty()) continue;
      const auto fields = split_tabs(line);
      if (fields.size() != 4) {
        malformed(path, line_no, "expected 4 tab-separated columns, got " +
                                     std::to_string(fields.size()));
      }
      if (!is_unsigned_integer(fields[0]) || !is_unsigned_integer(fields[1])) {
        malformed(path, line_no, "user and item ids must be integers");
      }
      edges.push_back({fields[0], fields[1]});
    }
  }
  if (edges.empty()) {
    throw std::runtime_error("'" + path + "' contains no interactions");
  }
  return edges;
}

FilteredInteractions filter_min_degree(const std::vector<RawEdge>& raw, int threshold) {
  if (threshold < 1) throw std::invalid_argument("filter_min_degree: threshold must be >= 1");

  // Binarize: repeated interactions of the same pair count once.
  std::vector<RawEdge> edges;
  edges.reserve(raw.size());
  {
    std::unordered_set<std::string> seen;
    seen.reserve(raw.size() * 2);
    for (const RawEdge& e : raw) {
      if (seen.insert(e.user + '\t' + e.item).second) edges.push_back(e);
    }
  }

  std::vector<char> alive(edges.size(), 1);
  while (true) {
    std::unordered_map<std::string, int> user_deg, item_deg;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (!alive[k]) continue;
      ++user_deg[edges[k].user];
      ++item_deg[edges[k].item];
    }
    bool removed = false;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (!alive[k]) continue;
      if (user_deg[edges[k].user] < threshold || item_deg[edges[k].item] < threshold) {
        alive[k] = 0;
        removed = true;
      }
    }
    if (!removed) break;
  }

  FilteredInteractions out;
  out.threshold = threshold;
  std::unordered_map<std::string, Index> user_index, item_index;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!alive[k]) continue;
    auto [uit, unew] = user_index.try_emplace(edges[k].user,
                                              static_cast<Index>(out.user_ids.size()));
    if (unew) out.user_ids.push_back(edges[k].user);
    auto [iit, inew] = item_index.try_emplace(edges[k].item,
                                              static_cast<Index>(out.item_ids.size()));
    if (inew) out.item_ids.push_back(edges[k].item);
    out.edges.emplace_back(uit->second, iit->second);
  }
  if (out.edges.empty()) {
    throw std::runtime_error("filter_min_degree: no interactions survive threshold " +
                             std::to_string(threshold));
  }
  return out;
}

std::vector<double> relative_popularity(const EdgeList& edges, Index num_items) {
  std::vector<long> counts(num_items, 0);
  for (const auto& [u, i] : edges) {
    if (i < 0 || i >= num_items) {
      throw std::invalid_argument("relative_popularity: item " + std::to_string(i) +
                                  " out of range");
    }
    ++counts[i];
  }
  const long max_count = *std::max_element(counts.begin(), counts.end());
  std::vector<double> propensity(num_items);
  for (Index i = 0; i < num_items; ++i) {
    if (counts[i] == 0) {
      throw std::invalid_argument("relative_popularity: item " + std::to_string(i) +
                                  " has no interactions");
    }
    propensity[i] =
        std::sqrt(static_cast<double>(counts[i]) / static_cast<double>(max_count));
  }
  return propensity;
}

std::vector<std::size_t> weighted_sample_order(const EdgeList& edges,
                                               const std::vector<double>& item_propensity,
                                               std::uint64_t seed) {
  // Exponential race: edge e finishes at time Exp(1) * p_i. Sorting by
  // finish time yields a weighted random permutation whose prefixes are
  // exactly sequential weighted draws without replacement, with weight
  // 1/p_i per interaction.
  Rng rng(seed);
  std::vector<std::pair<double, std::size_t>> race(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double p = item_propensity.at(edges[e].second);
    race[e] = {rng.next_exponential() * p, e};
  }
  std::sort(race.begin(), race.end());
  std::vector<std::size_t> order(edges.size());
  for (std::size_t r = 0; r < race.size(); ++r) order[r] = race[r].second;
  return order;
}

SplitResult pseudo_unbiased_split(const EdgeList& edges,
                                  const std::vector<double>& item_propensity,
                                  double test_frac, double val_frac, std::uint64_t seed) {
  if (!(test_frac > 0.0 && test_frac < 0.5) || !(val_frac > 0.0 && val_frac < 0.5)) {
    throw std::invalid_argument("pseudo_unbiased_split: fractions must lie in (0, 0.5)");
  }
  const auto total = static_cast<long>(edges.size());
  const long n_test = std::llround(test_frac * static_cast<double>(total));
  const long n_val = std::llround(val_frac * static_cast<double>(total));
  if (n_test + n_val >= total) {
    throw std::invalid_argument("pseudo_unbiased_split: nothing left for training");
  }

  const std::vector<std::size_t> order = weighted_sample_order(edges, item_propensity, seed);
  std::vector<std::size_t> test_idx(order.begin(), order.begin() + n_test);
  std::vector<std::size_t> val_idx(order.begin() + n_test, order.begin() + n_test + n_val);
  std::sort(test_idx.begin(), test_idx.end());
  std::sort(val_idx.begin(), val_idx.end());

  std::vector<char> in_test(edges.size(), 0), in_val(edges.size(), 0);
  for (std::size_t e : test_idx) in_test[e] = 1;
  for (std::size_t e : val_idx) in_val[e] = 1;

  SplitResult result;
  std::unordered_set<Index> train_users, train_items;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!in_test[e] && !in_val[e]) {
      result.train.push_back(edges[e]);
      train_users.insert(edges[e].first);
      train_items.insert(edges[e].second);
    }
  }

  // Cold-start repair: held-out interactions whose user or item has no
  // training occurrence go back to train. Train coverage only grows during
  // the pass, so a kept edge stays valid; a final pass verifies.
  auto repair = [&](const std::vector<std::size_t>& held, EdgeList& part) {
    for (std::size_t e : held) {
      const auto& [u, i] = edges[e];
      if (!train_users.contains(u) || !train_items.contains(i)) {
        result.train.push_back(edges[e]);
        train_users.insert(u);
        train_items.insert(i);
        ++result.repair_moved;
      } else {
        part.push_back(edges[e]);
      }
    }
  };
  repair(test_idx, result.test);
  repair(val_idx, result.validation);

  for (const auto& part : {result.test, result.validation}) {
    for (const auto& [u, i] : part) {
      if (!train_users.contains(u) || !train_items.contains(i)) {
        throw std::logic_error("pseudo_unbiased_split: cold-start repair incomplete");
      }
    }
  }
  return result;
}

namespace {

void write_pairs(const std::filesystem::path& path, const EdgeList& pairs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (const auto& [u, i] : pairs) out << u << '\t' << i << '\n';
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

EdgeList read_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  EdgeList pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || !is_unsigned_integer(fields[0]) ||
        !is_unsigned_integer(fields[1])) {
      malformed(path.string(), line_no, "expected 'user<TAB>item'");
    }
    pairs.emplace_back(static_cast<Index>(std::stol(fields[0])),
                       static_cast<Index>(std::stol(fields[1])));
  }
  return pairs;
}

void write_id_map(const std::filesystem::path& path, const std::vector<std::string>& ids) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (std::size_t k = 0; k < ids.size(); ++k) out << ids[k] << '\t' << k << '\n';
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<std::string> read_id_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::vector<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || !is_unsigned_integer(fields[1])) {
      malformed(path.string(), line_no, "expected 'raw_id<TAB>dense_index'");
    }
    const auto dense = static_cast<std::size_t>(std::stol(fields[1]));
    if (dense != ids.size()) {
      malformed(path.string(), line_no, "dense indices must be consecutive from 0");
    }
    ids.push_back(fields[0]);
  }
  return ids;
}

}  // namespace

void save_bundle(const std::string& dir, const DatasetBundle& bundle,
                 const std::string& manifest_json) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  write_pairs(root / "train.tsv", bundle.train);
  write_pairs(root / "val.tsv", bundle.validation);
  write_pairs(root / "test.tsv", bundle.test);
  write_id_map(root / "user_ids.tsv", bundle.user_ids);
  write_id_map(root / "item_ids.tsv", bundle.item_ids);
  std::ofstream manifest(root / "manifest.json");
  if (!manifest) throw std::runtime_error("cannot write '" + (root / "manifest.json").string() + "'");
  manifest << manifest_json << '\n';
}

DatasetBundle load_bundle(const std::string& dir) {
  const std::filesystem::path root(dir);
  if (!std::filesystem::exists(root / "manifest.json")) {
    throw std::runtime_error("'" + dir + "' is not a split bundle (missing manifest.json)");
  }
  DatasetBundle bundle;
  bundle.user_ids = read_id_map(root / "user_ids.tsv");
  bundle.item_ids = read_id_map(root / "item_ids.tsv");
  bundle.train = read_pairs(root / "train.tsv");
  bundle.validation = read_pairs(root / "val.tsv");
  bundle.test = read_pairs(root / "test.tsv");
  return bundle;
}

}  // namespace graphrec
