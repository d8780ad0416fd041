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
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "graphrec/aggregation.hpp"
#include "graphrec/graph.hpp"
#include "graphrec/rng.hpp"
#include "graphrec/types.hpp"

namespace graphrec {

struct EvalConfig {
  std::vector<int> k_list = {5, 10, 20};
  int num_negatives = 99;
  std::uint64_t seed = 1;
};

// Ranking quality under the 1-positive-vs-sampled-negatives protocol.
// Head/tail maps restrict to cases whose positive item sits in the top or
// bottom popularity decile of the training graph.
struct EvalReport {
  std::vector<int> k_list;
  std::map<int, double> hr, ndcg;
  std::map<int, double> hr_head, ndcg_head;
  std::map<int, double> hr_tail, ndcg_tail;
  long num_cases = 0;
  long num_head_cases = 0;
  long num_tail_cases = 0;
  long shortfall_cases = 0;  // cases with fewer eligible negatives than requested
  int num_negatives = 0;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::Mean;
  Normalization normalization = Normalization::Symmetric;
};

// 1-based rank of the positive among candidates; the positive loses ties,
// so a constant scorer ranks last.
template <typename Scalar>
int tie_rank(const std::vector<Scalar>& scores, std::size_t positive_index) {
  if (positive_index >= scores.size()) {
    throw std::out_of_range("tie_rank: positive index out of range");
  }
  const Scalar pos = scores[positive_index];
  int rank = 1;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (j == positive_index) continue;
    if (scores[j] >= pos) ++rank;
  }
  return rank;
}

// Items sorted by training degree descending (ties by index ascending);
// head takes the first ceil(N/10), tail the last ceil(N/10).
inline std::pair<std::vector<Index>, std::vector<Index>> head_tail_split(
    const InteractionGraph& graph_train) {
  const Index n = graph_train.num_items();
  if (n < 10) throw std::invalid_argument("head_tail_split: need at least 10 items");
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const Index da = graph_train.item_degree(a), db = graph_train.item_degree(b);
    return da != db ? da > db : a < b;
  });
  const Index decile = (n + 9) / 10;
  std::vector<Index> head(order.begin(), order.begin() + decile);
  std::vector<Index> tail(order.end() - decile, order.end());
  std::sort(head.begin(), head.end());
  std::sort(tail.begin(), tail.end());
  return {head, tail};
}

// Scores one (user, positive) case against `num_negatives` sampled
// negatives, drawn without replacement from items the user touched in
// neither the training graph nor the test set. Each case consumes an
// isolated RNG stream keyed by (seed, case index), so results are
// independent of evaluation order or parallel fan-out.
template <typename Scalar>
EvalReport evaluate(const Eigen::Ref<const MatrixX<Scalar>>& final_embeddings,
                    const InteractionGraph& graph_train, const EdgeList& test_set,
                    const EvalConfig& config = {}) {
  const Index m = graph_train.num_users();
  const Index n = graph_train.num_items();
  if (final_embeddings.rows() != m + n) {
    throw std::invalid_argument("evaluate: embedding rows " +
                                std::to_string(final_embeddings.rows()) +
                                " != graph nodes " + std::to_string(m + n));
  }

  EvalReport report;
  report.k_list = config.k_list;
  report.num_negatives = config.num_negatives;
  report.seed = config.seed;

  // Known positives per user across train and test; never sampled as
  // negatives.
  std::vector<std::vector<Index>> test_items(m);
  for (const auto& [u, i] : test_set) {
    if (u < 0 || u >= m || i < 0 || i >= n) {
      throw std::invalid_argument("evaluate: test pair (" + std::to_string(u) + ", " +
                                  std::to_string(i) + ") out of range");
    }
    test_items[u].push_back(i);
  }

  // The popularity-decile breakdown needs a meaningful decile; on tiny
  // instances the head/tail maps stay empty.
  std::vector<char> is_head(n, 0), is_tail(n, 0);
  if (n >= 10) {
    const auto [head, tail] = head_tail_split(graph_train);
    for (Index i : head) is_head[i] = 1;
    for (Index i : tail) is_tail[i] = 1;
  }

  struct Accum {
    std::map<int, double> hit, gain;
    long cases = 0;
  };
  Accum overall, head_acc, tail_acc;
  for (int k : config.k_list) {
    overall.hit[k] = overall.gain[k] = 0.0;
    head_acc.hit[k] = head_acc.gain[k] = 0.0;
    tail_acc.hit[k] = tail_acc.gain[k] = 0.0;
  }

  std::vector<char> excluded(n, 0);
  std::vector<Index> eligible;
  eligible.reserve(n);
  std::vector<Scalar> scores;

  for (std::size_t case_idx = 0; case_idx < test_set.size(); ++case_idx) {
    const auto [user, positive] = test_set[case_idx];

    for (Index i : graph_train.items_of(user)) excluded[i] = 1;
    for (Index i : test_items[user]) excluded[i] = 1;
    eligible.clear();
    for (Index i = 0; i < n; ++i)
      if (!excluded[i]) eligible.push_back(i);

    Rng rng(substream_seed(config.seed, case_idx));
    std::size_t num_candidates = eligible.size();
    if (static_cast<long>(num_candidates) > config.num_negatives) {
      // Partial Fisher-Yates: the first num_negatives slots become a
      // uniform without-replacement sample.
      num_candidates = static_cast<std::size_t>(config.num_negatives);
      for (std::size_t j = 0; j < num_candidates; ++j) {
        const std::size_t pick = j + rng.next_index(eligible.size() - j);
        std::swap(eligible[j], eligible[pick]);
      }
    } else if (static_cast<long>(num_candidates) < config.num_negatives) {
      ++report.shortfall_cases;
    }

    scores.clear();
    scores.push_back(final_embeddings.row(user).dot(final_embeddings.row(m + positive)));
    for (std::size_t j = 0; j < num_candidates; ++j) {
      scores.push_back(
          final_embeddings.row(user).dot(final_embeddings.row(m + eligible[j])));
    }
    const int rank = tie_rank(scores, 0);

    for (int k : config.k_list) {
      const double hit = rank <= k ? 1.0 : 0.0;
      const double gain = rank <= k ? 1.0 / std::log2(static_cast<double>(rank) + 1.0) : 0.0;
      overall.hit[k] += hit;
      overall.gain[k] += gain;
      if (is_head[positive]) {
        head_acc.hit[k] += hit;
        head_acc.gain[k] += gain;
      }
      if (is_tail[positive]) {
        tail_acc.hit[k] += hit;
        tail_acc.gain[k] += gain;
      }
    }
    ++overall.cases;
    if (is_head[positive]) ++head_acc.cases;
    if (is_tail[positive]) ++tail_acc.cases;

    for (Index i : graph_train.items_of(user)) excluded[i] = 0;
    for (Index i : test_items[user]) excluded[i] = 0;
  }

  report.num_cases = overall.cases;
  report.num_head_cases = head_acc.cases;
  report.num_tail_cases = tail_acc.cases;
  const auto mean = [](double sum, long count) { return count ? sum / count : 0.0; };
  for (int k : config.k_list) {
    report.hr[k] = mean(overall.hit[k], overall.cases);
    report.ndcg[k] = mean(overall.gain[k], overall.cases);
    report.hr_head[k] = mean(head_acc.hit[k], head_acc.cases);
    report.ndcg_head[k] = mean(head_acc.gain[k], head_acc.cases);
    report.hr_tail[k] = mean(tail_acc.hit[k], tail_acc.cases);
    report.ndcg_tail[k] = mean(tail_acc.gain[k], tail_acc.cases);
  }
  return report;
}

}  // namespace graphrec
