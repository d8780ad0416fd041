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

#include <map>
#include <string>
#include <vector>

#include "graphrec/evaluation.hpp"

namespace graphrec {

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& json_text);

// Mean and sample standard deviation of each metric across seeds.
struct MetricSummary {
  std::vector<int> k_list;
  std::map<int, double> hr_mean, hr_std, ndcg_mean, ndcg_std;
  long num_seeds = 0;
  Strategy strategy = Strategy::Mean;
  Normalization normalization = Normalization::Symmetric;
};

MetricSummary summarize_reports(const std::vector<EvalReport>& reports);
std::string summary_to_json(const MetricSummary& summary);
MetricSummary summary_from_json(const std::string& json_text);

// One comparison row: a label plus its HR/NDCG values per k.
struct TableRow {
  std::string label;
  std::map<int, double> hr, ndcg;
};

// Aligned plain-text comparison table, one row per strategy/run; the
// largest value in each column is wrapped in asterisks.
std::string render_comparison_table(const std::vector<TableRow>& rows,
                                    const std::vector<int>& k_list);

// The same numbers as a flat CSV: label,metric,k,value.
std::string comparison_csv(const std::vector<TableRow>& rows, const std::vector<int>& k_list);

}  // namespace graphrec
