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
#include "graphrec/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace graphrec {

namespace {

using json = nlohmann::ordered_json;

json metric_map_to_json(const std::map<int, double>& values) {
  json out = json::object();
  for (const auto& [k, v] : values) out[std::to_string(k)] = v;
  return out;
}

std::map<int, double> metric_map_from_json(const json& obj) {
  std::map<int, double> values;
  for (const auto& [key, v] : obj.items()) values[std::stoi(key)] = v.get<double>();
  return values;
}

}  // namespace

std::string report_to_json(const EvalReport& r) {
  json j;
  j["k_list"] = r.k_list;
  j["num_cases"] = r.num_cases;
  j["num_negatives"] = r.num_negatives;
  j["seed"] = r.seed;
  j["strategy"] = to_string(r.strategy);
  j["normalization"] = to_string(r.normalization);
  j["shortfall_cases"] = r.shortfall_cases;
  j["hr"] = metric_map_to_json(r.hr);
  j["ndcg"] = metric_map_to_json(r.ndcg);
  j["head"] = {{"num_cases", r.num_head_cases},
               {"hr", metric_map_to_json(r.hr_head)},
               {"ndcg", metric_map_to_json(r.ndcg_head)}};
  j["tail"] = {{"num_cases", r.num_tail_cases},
               {"hr", metric_map_to_json(r.hr_tail)},
               {"ndcg", metric_map_to_json(r.ndcg_tail)}};
  return j.dump(2);
}

EvalReport report_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  EvalReport r;
  r.k_list = j.at("k_list").get<std::vector<int>>();
  r.num_cases = j.at("num_cases").get<long>();
  r.num_negatives = j.at("num_negatives").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.strategy = strategy_from_string(j.at("strategy").get<std::string>());
  r.normalization = normalization_from_string(j.at("normalization").get<std::string>());
  r.shortfall_cases = j.at("shortfall_cases").get<long>();
  r.hr = metric_map_from_json(j.at("hr"));
  r.ndcg = metric_map_from_json(j.at("ndcg"));
  r.num_head_cases = j.at("head").at("num_cases").get<long>();
  r.hr_head = metric_map_from_json(j.at("head").at("hr"));
  r.ndcg_head = metric_map_from_json(j.at("head").at("ndcg"));
  r.num_tail_cases = j.at("tail").at("num_cases").get<long>();
  r.hr_tail = metric_map_from_json(j.at("tail").at("hr"));
  r.ndcg_tail = metric_map_from_json(j.at("tail").at("ndcg"));
  return r;
}

MetricSummary summarize_reports(const std::vector<EvalReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("summarize_reports: no reports");
  MetricSummary s;
  s.k_list = reports.front().k_list;
  s.num_seeds = static_cast<long>(reports.size());
  s.strategy = reports.front().strategy;
  s.normalization = reports.front().normalization;
  for (int k : s.k_list) {
    double hr_sum = 0, ndcg_sum = 0;
    for (const auto& r : reports) {
      hr_sum += r.hr.at(k);
      ndcg_sum += r.ndcg.at(k);
    }
    const double hr_mean = hr_sum / s.num_seeds;
    const double ndcg_mean = ndcg_sum / s.num_seeds;
    double hr_var = 0, ndcg_var = 0;
    for (const auto& r : reports) {
      hr_var += (r.hr.at(k) - hr_mean) * (r.hr.at(k) - hr_mean);
      ndcg_var += (r.ndcg.at(k) - ndcg_mean) * (r.ndcg.at(k) - ndcg_mean);
    }
    const double denom = s.num_seeds > 1 ? s.num_seeds - 1 : 1;
    s.hr_mean[k] = hr_mean;
    s.hr_std[k] = std::sqrt(hr_var / denom);
    s.ndcg_mean[k] = ndcg_mean;
    s.ndcg_std[k] = std::sqrt(ndcg_var / denom);
  }
  return s;
}

std::string summary_to_json(const MetricSummary& s) {
  json j;
  j["k_list"] = s.k_list;
  j["num_seeds"] = s.num_seeds;
  j["strategy"] = to_string(s.strategy);
  j["normalization"] = to_string(s.normalization);
  j["hr_mean"] = metric_map_to_json(s.hr_mean);
  j["hr_std"] = metric_map_to_json(s.hr_std);
  j["ndcg_mean"] = metric_map_to_json(s.ndcg_mean);
  j["ndcg_std"] = metric_map_to_json(s.ndcg_std);
  return j.dump(2);
}

MetricSummary summary_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  MetricSummary s;
  s.k_list = j.at("k_list").get<std::vector<int>>();
  s.num_seeds = j.at("num_seeds").get<long>();
  s.strategy = strategy_from_string(j.at("strategy").get<std::string>());
  s.normalization = normalization_from_string(j.at("normalization").get<std::string>());
  s.hr_mean = metric_map_from_json(j.at("hr_mean"));
  s.hr_std = metric_map_from_json(j.at("hr_std"));
  s.ndcg_mean = metric_map_from_json(j.at("ndcg_mean"));
  s.ndcg_std = metric_map_from_json(j.at("ndcg_std"));
  return s;
}

std::string render_comparison_table(const std::vector<TableRow>& rows,
                                    const std::vector<int>& k_list) {
  std::size_t label_width = 8;
  for (const auto& row : rows) label_width = std::max(label_width, row.label.size());

  const auto column_max = [&](bool hr, int k) {
    double best = -1;
    for (const auto& row : rows) best = std::max(best, (hr ? row.hr : row.ndcg).at(k));
    return best;
  };

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(label_width) + 2) << "strategy";
  for (int k : k_list) out << std::right << std::setw(10) << ("HR@" + std::to_string(k));
  for (int k : k_list) out << std::right << std::setw(10) << ("NDCG@" + std::to_string(k));
  out << '\n';
  out << std::string(label_width + 2 + 10 * 2 * k_list.size(), '-') << '\n';

  for (const auto& row : rows) {
    out << std::left << std::setw(static_cast<int>(label_width) + 2) << row.label;
    for (bool hr : {true, false}) {
      for (int k : k_list) {
        const double v = (hr ? row.hr : row.ndcg).at(k);
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(4) << v;
        std::string text = cell.str();
        if (v == column_max(hr, k)) text = "*" + text + "*";
        out << std::right << std::setw(10) << text;
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string comparison_csv(const std::vector<TableRow>& rows, const std::vector<int>& k_list) {
  std::ostringstream out;
  out << "label,metric,k,value\n";
  for (const auto& row : rows) {
    for (int k : k_list) out << row.label << ",hr," << k << ',' << row.hr.at(k) << '\n';
    for (int k : k_list) out << row.label << ",ndcg," << k << ',' << row.ndcg.at(k) << '\n';
  }
  return out.str();
}

}  // namespace graphrec
