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
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphrec/checkpoint.hpp"
#include "graphrec/data.hpp"
#include "graphrec/evaluation.hpp"
#include "graphrec/report.hpp"
#include "graphrec/synthetic.hpp"
#include "graphrec/training.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace graphrec;

namespace {

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// "7", "1,4,9" or "1..10" (inclusive range).
std::vector<std::uint64_t> parse_seed_list(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::string part =
        spec.substr(start, comma == std::string::npos ? comma : comma - start);
    if (part.empty()) throw std::invalid_argument("bad seed list '" + spec + "'");
    const std::size_t dots = part.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(std::stoull(part));
    } else {
      const std::uint64_t lo = std::stoull(part.substr(0, dots));
      const std::uint64_t hi = std::stoull(part.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("bad seed range '" + part + "'");
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (seeds.empty()) throw std::invalid_argument("no seeds in '" + spec + "'");
  return seeds;
}

std::vector<std::string> split_csv(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    parts.push_back(spec.substr(start, comma == std::string::npos ? comma : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

struct PrepareOptions {
  std::string input;
  std::string format = "tsv_triplet";
  int min_degree = 10;
  double test_frac = 0.05;
  double val_frac = 0.05;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_prepare(const PrepareOptions& opt) {
  if (!fs::exists(opt.input)) {
    throw std::runtime_error("input file does not exist: '" + opt.input + "'");
  }
  const auto raw = load_interactions(opt.input, format_from_string(opt.format));
  const auto filtered = filter_min_degree(raw, opt.min_degree);
  // Split weights come from popularity over the full filtered data; the
  // training-time propensity table is recomputed later on train only.
  const auto popularity = relative_popularity(filtered.edges, filtered.num_items());
  const auto split = pseudo_unbiased_split(filtered.edges, popularity, opt.test_frac,
                                           opt.val_frac, opt.seed);

  DatasetBundle bundle;
  bundle.user_ids = filtered.user_ids;
  bundle.item_ids = filtered.item_ids;
  bundle.train = split.train;
  bundle.validation = split.validation;
  bundle.test = split.test;

  json manifest;
  manifest["command"] = "prepare";
  manifest["flags"] = {{"input", opt.input},       {"format", opt.format},
                       {"min_degree", opt.min_degree}, {"test_frac", opt.test_frac},
                       {"val_frac", opt.val_frac}, {"seed", opt.seed},
                       {"out", opt.out}};
  manifest["num_users"] = filtered.num_users();
  manifest["num_items"] = filtered.num_items();
  manifest["num_interactions"] = filtered.edges.size();
  manifest["num_train"] = bundle.train.size();
  manifest["num_validation"] = bundle.validation.size();
  manifest["num_test"] = bundle.test.size();
  manifest["repair_moved"] = split.repair_moved;

  save_bundle(opt.out, bundle, manifest.dump(2));
  std::cout << "prepared bundle at " << opt.out << ": " << filtered.num_users()
            << " users, " << filtered.num_items() << " items, " << filtered.edges.size()
            << " interactions (train/val/test = " << bundle.train.size() << "/"
            << bundle.validation.size() << "/" << bundle.test.size()
            << ", cold-start repairs = " << split.repair_moved << ")\n";
  return 0;
}

struct TrainOptions {
  std::string data;
  std::string out;
  std::string strategy = "mean";
  std::string norm;  // empty: strategy default
  std::string loss = "bpr";
  int epochs = 100;
  int batch_size = 256;
  double learning_rate = 0.003;
  double l2_weight = 1e-4;
  int dim = 64;
  int depth = 3;
  double init_scale = 0.1;
  double propensity_floor = 0.0;
  std::uint64_t seed = 1;
  std::string export_propensity;
  int early_stop_every = 0;  // 0 disables validation early stopping
  int early_stop_patience = 3;
};

int cmd_train(const TrainOptions& opt) {
  const DatasetBundle bundle = load_bundle(opt.data);
  const InteractionGraph graph =
      build_graph(bundle.train, bundle.num_users(), bundle.num_items());
  const PropensityTable table = estimate_propensity(graph, opt.propensity_floor);

  TrainConfig config;
  config.epochs = opt.epochs;
  config.batch_size = opt.batch_size;
  config.learning_rate = opt.learning_rate;
  config.l2_weight = opt.l2_weight;
  config.loss_kind = loss_kind_from_string(opt.loss);
  config.seed = opt.seed;
  config.strategy = strategy_from_string(opt.strategy);
  if (!opt.norm.empty()) config.normalization = normalization_from_string(opt.norm);
  config.dim = opt.dim;
  config.depth = opt.depth;
  config.init_scale = opt.init_scale;

  EarlyStopping<double> early;
  if (opt.early_stop_every > 0) {
    early.check_every = opt.early_stop_every;
    early.patience = opt.early_stop_patience;
    const Normalization norm =
        config.normalization.value_or(default_normalization(config.strategy));
    const auto eval_op = build_operator<double>(graph, &table, config.strategy, norm);
    const EdgeList validation = bundle.validation;
    const std::uint64_t eval_seed = substream_seed(opt.seed, 0xE5);
    early.score = [&graph, eval_op, validation, eval_seed](const EmbeddingModel<double>& m) {
      EvalConfig ec;
      ec.k_list = {10};
      ec.seed = eval_seed;
      const MatrixXd fe = forward(m, eval_op);
      return evaluate<double>(fe, graph, validation, ec).hr.at(10);
    };
  }

  const TrainResult<double> result = train<double>(graph, &table, config, early);

  fs::create_directories(opt.out);
  const fs::path out(opt.out);
  Checkpoint ckpt{result.model, config.strategy, result.normalization, config.seed};
  save_checkpoint((out / "checkpoint.bin").string(), ckpt);

  std::ostringstream trace;
  trace << "epoch,mean_loss\n";
  trace.precision(17);
  for (std::size_t e = 0; e < result.epoch_loss.size(); ++e) {
    trace << (e + 1) << ',' << result.epoch_loss[e] << '\n';
  }
  write_text(out / "loss_trace.csv", trace.str());

  if (!opt.export_propensity.empty()) {
    std::ostringstream csv;
    csv << "item_id,propensity\n";
    csv.precision(17);
    for (Index i = 0; i < table.num_items(); ++i) {
      csv << bundle.item_ids[i] << ',' << table.item_propensity[i] << '\n';
    }
    write_text(opt.export_propensity, csv.str());
  }

  json manifest;
  manifest["command"] = "train";
  manifest["flags"] = {{"data", opt.data},
                       {"out", opt.out},
                       {"strategy", opt.strategy},
                       {"norm", to_string(result.normalization)},
                       {"loss", opt.loss},
                       {"epochs", opt.epochs},
                       {"batch_size", opt.batch_size},
                       {"lr", opt.learning_rate},
                       {"l2", opt.l2_weight},
                       {"dim", opt.dim},
                       {"depth", opt.depth},
                       {"init_scale", opt.init_scale},
                       {"propensity_floor", opt.propensity_floor},
                       {"seed", opt.seed},
                       {"early_stop_every", opt.early_stop_every},
                       {"early_stop_patience", opt.early_stop_patience}};
  manifest["epochs_run"] = result.epochs_run;
  manifest["stopped_early"] = result.stopped_early;
  manifest["final_loss"] = result.epoch_loss.back();
  write_text(out / "manifest.json", manifest.dump(2));

  std::cout << "trained " << opt.strategy << "/" << to_string(result.normalization)
            << " for " << result.epochs_run << " epochs; final mean loss "
            << result.epoch_loss.back() << "; checkpoint at "
            << (out / "checkpoint.bin").string() << "\n";
  return 0;
}

struct EvaluateOptions {
  std::string data;
  std::string checkpoint;
  std::string out;
  std::string eval_strategies = "mean,propensity,navip";
  std::string norm;  // empty: per-strategy default
  std::string split = "test";
  std::string k_spec = "5,10,20";
  int num_negatives = 99;
  std::string seeds = "1";
  double propensity_floor = 0.0;
};

int cmd_evaluate(const EvaluateOptions& opt) {
  const DatasetBundle bundle = load_bundle(opt.data);
  const InteractionGraph graph =
      build_graph(bundle.train, bundle.num_users(), bundle.num_items());
  const PropensityTable table = estimate_propensity(graph, opt.propensity_floor);
  const Checkpoint ckpt = load_checkpoint(opt.checkpoint);
  if (ckpt.model.num_users != graph.num_users() ||
      ckpt.model.num_items != graph.num_items()) {
    throw std::runtime_error("checkpoint shape (" + std::to_string(ckpt.model.num_users) +
                             " users, " + std::to_string(ckpt.model.num_items) +
                             " items) does not match bundle (" +
                             std::to_string(graph.num_users()) + ", " +
                             std::to_string(graph.num_items()) + ")");
  }

  const EdgeList* positives = nullptr;
  if (opt.split == "test") {
    positives = &bundle.test;
  } else if (opt.split == "validation") {
    positives = &bundle.validation;
  } else {
    throw std::invalid_argument("unknown split '" + opt.split +
                                "' (expected test|validation)");
  }

  std::vector<int> k_list;
  for (const auto& part : split_csv(opt.k_spec)) k_list.push_back(std::stoi(part));
  const auto seeds = parse_seed_list(opt.seeds);

  fs::create_directories(opt.out);
  const fs::path out(opt.out);

  std::vector<TableRow> rows;
  json manifest;
  manifest["command"] = "evaluate";
  manifest["flags"] = {{"data", opt.data},
                       {"checkpoint", opt.checkpoint},
                       {"out", opt.out},
                       {"eval_strategies", opt.eval_strategies},
                       {"norm", opt.norm},
                       {"split", opt.split},
                       {"k", opt.k_spec},
                       {"num_negatives", opt.num_negatives},
                       {"seeds", opt.seeds},
                       {"propensity_floor", opt.propensity_floor}};
  manifest["checkpoint_strategy"] = to_string(ckpt.strategy);
  manifest["num_positives"] = positives->size();

  for (const std::string& name : split_csv(opt.eval_strategies)) {
    const Strategy strategy = strategy_from_string(name);
    const Normalization norm = opt.norm.empty() ? default_normalization(strategy)
                                                : normalization_from_string(opt.norm);
    const auto op = build_operator<double>(graph, &table, strategy, norm);
    const MatrixXd fe = swap_operator_inference(ckpt.model, op);

    std::vector<EvalReport> reports;
    for (const std::uint64_t seed : seeds) {
      EvalConfig config;
      config.k_list = k_list;
      config.num_negatives = opt.num_negatives;
      config.seed = seed;
      EvalReport report = evaluate<double>(fe, graph, *positives, config);
      report.strategy = strategy;
      report.normalization = norm;

      // metric sanity gates the exit code
      double prev_hr = 0.0, prev_ndcg = 0.0;
      for (int k : k_list) {
        const double hr = report.hr.at(k), ndcg = report.ndcg.at(k);
        if (hr < 0 || hr > 1 || ndcg < 0 || ndcg > 1 || ndcg > hr + 1e-12 ||
            hr + 1e-12 < prev_hr || ndcg + 1e-12 < prev_ndcg) {
          throw std::runtime_error("metric invariant violated for " + name + " at k=" +
                                   std::to_string(k));
        }
        prev_hr = hr;
        prev_ndcg = ndcg;
      }

      write_text(out / ("report_" + name + "_seed" + std::to_string(seed) + ".json"),
                 report_to_json(report));
      reports.push_back(std::move(report));
    }
    const MetricSummary summary = summarize_reports(reports);
    write_text(out / ("summary_" + name + ".json"), summary_to_json(summary));
    rows.push_back({name, summary.hr_mean, summary.ndcg_mean});
  }

  const std::string table_text = render_comparison_table(rows, k_list);
  write_text(out / "table.txt", table_text);
  write_text(out / "table.csv", comparison_csv(rows, k_list));
  write_text(out / "manifest.json", manifest.dump(2));
  std::cout << "split=" << opt.split << " cases=" << positives->size()
            << " seeds=" << seeds.size() << "\n"
            << table_text;
  return 0;
}

struct ReportOptions {
  std::vector<std::string> run_dirs;
  std::string emit = "table";
  std::string out;
};

int cmd_report(const ReportOptions& opt) {
  std::vector<TableRow> rows;
  std::vector<int> k_list;
  for (const std::string& dir : opt.run_dirs) {
    if (!fs::is_directory(dir)) {
      throw std::runtime_error("run directory does not exist: '" + dir + "'");
    }
    std::vector<fs::path> summaries;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("summary_", 0) == 0 && entry.path().extension() == ".json") {
        summaries.push_back(entry.path());
      }
    }
    std::sort(summaries.begin(), summaries.end());
    if (summaries.empty()) {
      throw std::runtime_error("no summary_*.json files in '" + dir + "'");
    }
    for (const auto& path : summaries) {
      const MetricSummary s = summary_from_json(read_text(path));
      if (k_list.empty()) k_list = s.k_list;
      std::string label = to_string(s.strategy);
      if (opt.run_dirs.size() > 1) {
        label = fs::path(dir).filename().string() + ":" + label;
      }
      rows.push_back({label, s.hr_mean, s.ndcg_mean});
    }
  }

  const std::string text =
      opt.emit == "csv" ? comparison_csv(rows, k_list) : render_comparison_table(rows, k_list);
  if (opt.emit != "csv" && opt.emit != "table") {
    throw std::invalid_argument("unknown emit format '" + opt.emit + "' (expected table|csv)");
  }
  if (!opt.out.empty()) write_text(opt.out, text);
  std::cout << text;
  return 0;
}

struct SynthOptions {
  std::string out;
  SynthConfig config;
};

int cmd_synth(const SynthOptions& opt) {
  const auto rows = synthesize_interactions(opt.config);
  write_interactions_file(opt.out, rows);
  std::cout << "wrote " << rows.size() << " interactions for " << opt.config.num_users
            << " users x " << opt.config.num_items << " items to " << opt.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GNN recommender with swappable neighbor aggregation"};
  app.require_subcommand(1);

  PrepareOptions prepare_opt;
  CLI::App* prepare = app.add_subcommand(
      "prepare", "Filter raw interactions and write a train/val/test bundle");
  prepare->set_config("--config");
  prepare->add_option("--input", prepare_opt.input, "raw interactions file")->required();
  prepare->add_option("--format", prepare_opt.format, "tsv_triplet|movielens_100k");
  prepare->add_option("--min-degree", prepare_opt.min_degree, "iterative degree threshold");
  prepare->add_option("--test-frac", prepare_opt.test_frac, "held-out test fraction");
  prepare->add_option("--val-frac", prepare_opt.val_frac, "held-out validation fraction");
  prepare->add_option("--seed", prepare_opt.seed, "split seed");
  prepare->add_option("--out", prepare_opt.out, "bundle output directory")->required();

  TrainOptions train_opt;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Optimize embeddings on a prepared bundle");
  train_cmd->set_config("--config");
  train_cmd->add_option("--data", train_opt.data, "bundle directory")->required();
  train_cmd->add_option("--out", train_opt.out, "run output directory")->required();
  train_cmd->add_option("--strategy", train_opt.strategy, "mean|propensity|navip");
  train_cmd->add_option("--norm", train_opt.norm,
                        "symmetric|random-walk (default depends on strategy)");
  train_cmd->add_option("--loss", train_opt.loss, "bpr|ips-bpr");
  train_cmd->add_option("--epochs", train_opt.epochs);
  train_cmd->add_option("--batch-size", train_opt.batch_size);
  train_cmd->add_option("--lr", train_opt.learning_rate);
  train_cmd->add_option("--l2", train_opt.l2_weight);
  train_cmd->add_option("--dim", train_opt.dim, "embedding width");
  train_cmd->add_option("--depth", train_opt.depth, "propagation layers");
  train_cmd->add_option("--init-scale", train_opt.init_scale);
  train_cmd->add_option("--propensity-floor", train_opt.propensity_floor);
  train_cmd->add_option("--seed", train_opt.seed, "run seed");
  train_cmd->add_option("--export-propensity", train_opt.export_propensity,
                        "write item propensities to this CSV");
  train_cmd->add_option("--early-stop-every", train_opt.early_stop_every,
                        "validate every N epochs (0 = off)");
  train_cmd->add_option("--early-stop-patience", train_opt.early_stop_patience);

  EvaluateOptions eval_opt;
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Score a checkpoint under one or more aggregations");
  evaluate_cmd->set_config("--config");
  evaluate_cmd->add_option("--data", eval_opt.data, "bundle directory")->required();
  evaluate_cmd->add_option("--checkpoint", eval_opt.checkpoint)->required();
  evaluate_cmd->add_option("--out", eval_opt.out, "report output directory")->required();
  evaluate_cmd->add_option("--eval-strategies", eval_opt.eval_strategies,
                           "comma list of mean|propensity|navip");
  evaluate_cmd->add_option("--norm", eval_opt.norm,
                           "force one normalization for all strategies");
  evaluate_cmd->add_option("--split", eval_opt.split, "test|validation");
  evaluate_cmd->add_option("--k", eval_opt.k_spec, "comma list of cutoffs");
  evaluate_cmd->add_option("--num-negatives", eval_opt.num_negatives);
  evaluate_cmd->add_option("--seeds", eval_opt.seeds, "e.g. 7 or 1,2,3 or 1..10");
  evaluate_cmd->add_option("--propensity-floor", eval_opt.propensity_floor);

  ReportOptions report_opt;
  CLI::App* report_cmd =
      app.add_subcommand("report", "Combine evaluation runs into one comparison table");
  report_cmd->set_config("--config");
  report_cmd->add_option("dirs", report_opt.run_dirs, "evaluate output directories")
      ->required();
  report_cmd->add_option("--emit", report_opt.emit, "table|csv");
  report_cmd->add_option("--out", report_opt.out, "also write the result here");

  SynthOptions synth_opt;
  CLI::App* synth =
      app.add_subcommand("synth", "Generate a popularity-biased interaction log");
  synth->set_config("--config");
  synth->add_option("--out", synth_opt.out, "output file (4-column layout)")->required();
  synth->add_option("--users", synth_opt.config.num_users);
  synth->add_option("--items", synth_opt.config.num_items);
  synth->add_option("--interactions", synth_opt.config.target_interactions);
  synth->add_option("--latent-dim", synth_opt.config.latent_dim);
  synth->add_option("--clusters", synth_opt.config.num_clusters);
  synth->add_option("--user-spread", synth_opt.config.user_spread);
  synth->add_option("--item-spread", synth_opt.config.item_spread);
  synth->add_option("--preference-weight", synth_opt.config.preference_weight);
  synth->add_option("--exposure-weight", synth_opt.config.exposure_weight);
  synth->add_option("--exposure-mix", synth_opt.config.exposure_mix);
  synth->add_option("--popularity-sigma", synth_opt.config.popularity_sigma);
  synth->add_option("--activity-sigma", synth_opt.config.activity_sigma);
  synth->add_option("--min-activity", synth_opt.config.min_activity);
  synth->add_option("--max-activity", synth_opt.config.max_activity);
  synth->add_option("--seed", synth_opt.config.seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (prepare->parsed()) return cmd_prepare(prepare_opt);
    if (train_cmd->parsed()) return cmd_train(train_opt);
    if (evaluate_cmd->parsed()) return cmd_evaluate(eval_opt);
    if (report_cmd->parsed()) return cmd_report(report_opt);
    if (synth->parsed()) return cmd_synth(synth_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
