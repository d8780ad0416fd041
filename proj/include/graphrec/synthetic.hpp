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

#include "graphrec/types.hpp"

namespace graphrec {

// Generator for offline experiments, built around the exposure-bias data
// model: every interaction is either an *exposure* event, where the system
// surfaces an item with probability proportional to softmax of
// exposure_weight * log popularity regardless of taste, or an *organic*
// event drawn from the user's taste softmax. exposure_mix sets the
// fraction of exposure events; preference_weight sharpens the taste
// distribution. Users and items share a clustered latent taste space, and
// items carry a lognormal popularity prior.
struct SynthConfig {
  Index num_users = 943;
  Index num_items = 1682;
  long target_interactions = 100000;
  int latent_dim = 16;
  int num_clusters = 24;
  double user_spread = 0.8;
  double item_spread = 0.7;
  double preference_weight = 1.5;  // taste softmax sharpness
  double exposure_weight = 1.0;    // exposure softmax sharpness over log popularity
  double exposure_mix = 0.45;      // fraction of interactions driven by exposure
  double popularity_sigma = 1.3;   // lognormal spread of the popularity prior
  double activity_sigma = 0.65;
  int min_activity = 18;
  int max_activity = 600;
  std::uint64_t seed = 7;
};

// One interaction row in the canonical 4-column rating-log layout.
struct SynthRow {
  Index user;  // 1-based raw id
  Index item;  // 1-based raw id
  int rating;
  long timestamp;
};

// Deterministic for a given config. Rows are user-major with ascending
// item ids per user.
std::vector<SynthRow> synthesize_interactions(const SynthConfig& config);

// Writes rows as tab-separated "user item rating timestamp" lines,
// readable through both supported input formats.
void write_interactions_file(const std::string& path, const std::vector<SynthRow>& rows);

}  // namespace graphrec
