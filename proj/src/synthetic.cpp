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
#include "graphrec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "graphrec/rng.hpp"

namespace graphrec {

namespace {

// Cumulative distribution over items from unnormalized log weights.
std::vector<double> softmax_cdf(const VectorXd& logits) {
  const double peak = logits.maxCoeff();
  std::vector<double> cdf(logits.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    total += std::exp(logits(i) - peak);
    cdf[i] = total;
  }
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;
  return cdf;
}

Index sample_cdf(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.next_unit();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<Index>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                     static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

}  // namespace

std::vector<SynthRow> synthesize_interactions(const SynthConfig& cfg) {
  if (cfg.num_users < 1 || cfg.num_items < 2) {
    throw std::invalid_argument("synthesize: need at least 1 user and 2 items");
  }
  if (cfg.min_activity < 1 || cfg.max_activity < cfg.min_activity) {
    throw std::invalid_argument("synthesize: bad activity bounds");
  }
  if (cfg.exposure_mix < 0.0 || cfg.exposure_mix > 1.0) {
    throw std::invalid_argument("synthesize: exposure_mix must lie in [0, 1]");
  }

  Rng rng(cfg.seed);
  const int g = cfg.latent_dim;

  MatrixXd centers(cfg.num_clusters, g);
  for (Index c = 0; c < cfg.num_clusters; ++c)
    for (int k = 0; k < g; ++k) centers(c, k) = rng.next_normal();

  MatrixXd item_taste(cfg.num_items, g);
  VectorXd item_log_pop(cfg.num_items);
  for (Index i = 0; i < cfg.num_items; ++i) {
    const Index c = static_cast<Index>(rng.next_index(cfg.num_clusters));
    for (int k = 0; k < g; ++k)
      item_taste(i, k) = centers(c, k) + cfg.item_spread * rng.next_normal();
    item_log_pop(i) = cfg.popularity_sigma * rng.next_normal();
  }
  const std::vector<double> exposure_cdf = softmax_cdf(cfg.exposure_weight * item_log_pop);

  MatrixXd user_taste(cfg.num_users, g);
  std::vector<double> raw_activity(cfg.num_users);
  for (Index u = 0; u < cfg.num_users; ++u) {
    const Index c = static_cast<Index>(rng.next_index(cfg.num_clusters));
    for (int k = 0; k < g; ++k)
      user_taste(u, k) = centers(c, k) + cfg.user_spread * rng.next_normal();
    raw_activity[u] = std::exp(cfg.activity_sigma * rng.next_normal());
  }

  // Scale activities so the total lands near the target, then clip.
  const double raw_sum = std::accumulate(raw_activity.begin(), raw_activity.end(), 0.0);
  const double scale = static_cast<double>(cfg.target_interactions) / raw_sum;
  const int activity_cap = std::min<int>(cfg.max_activity, cfg.num_items - 1);
  std::vector<int> activity(cfg.num_users);
  for (Index u = 0; u < cfg.num_users; ++u) {
    activity[u] = std::clamp(static_cast<int>(std::lround(raw_activity[u] * scale)),
                             cfg.min_activity, activity_cap);
  }

  const double taste_scale = cfg.preference_weight / std::sqrt(static_cast<double>(g));
  std::vector<SynthRow> rows;
  rows.reserve(cfg.target_interactions + cfg.target_interactions / 10);
  long timestamp = 880000000;
  std::vector<char> picked_mask(cfg.num_items, 0);
  std::vector<Index> picked;
  for (Index u = 0; u < cfg.num_users; ++u) {
    const VectorXd taste_logits = taste_scale * (item_taste * user_taste.row(u).transpose());
    const std::vector<double> taste_cdf = softmax_cdf(taste_logits);

    picked.clear();
    while (static_cast<int>(picked.size()) < activity[u]) {
      const bool exposure_event = rng.next_unit() < cfg.exposure_mix;
      Index item = -1;
      for (int attempt = 0; attempt < 20000; ++attempt) {
        const Index candidate = sample_cdf(exposure_event ? exposure_cdf : taste_cdf, rng);
        if (!picked_mask[candidate]) {
          item = candidate;
          break;
        }
      }
      if (item < 0) {
        // distribution mass exhausted by earlier picks: take the first
        // untouched item to keep the draw total exact
        for (Index i = 0; i < cfg.num_items; ++i) {
          if (!picked_mask[i]) {
            item = i;
            break;
          }
        }
      }
      picked_mask[item] = 1;
      picked.push_back(item);
    }
    for (Index i : picked) picked_mask[i] = 0;
    std::sort(picked.begin(), picked.end());
    for (Index i : picked) {
      rows.push_back({u + 1, i + 1, 1 + static_cast<int>(rng.next_index(5)), timestamp++});
    }
  }
  return rows;
}

void write_interactions_file(const std::string& path, const std::vector<SynthRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (const SynthRow& r : rows) {
    out << r.user << '\t' << r.item << '\t' << r.rating << '\t' << r.timestamp << '\n';
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace graphrec
