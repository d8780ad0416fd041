// Acceptance suite: one line of output per criterion, nonzero exit if any
// fails. Criteria 1-5 run against library-level oracles; 6 and 7 run the
// full experiment at dataset scale; 8 replays the CLI pipeline twice and
// byte-compares the artifacts.
//
// The dataset-scale criteria use the file named by GRAPHREC_ML100K when it
// exists and otherwise fall back to the bundled popularity-biased
// generator at the same scale (943 users, ~1.6k items, ~100k
// interactions).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "graphrec/checkpoint.hpp"
#include "graphrec/data.hpp"
#include "graphrec/evaluation.hpp"
#include "graphrec/report.hpp"
#include "graphrec/synthetic.hpp"
#include "graphrec/training.hpp"
#include "../oracles.hpp"

namespace fs = std::filesystem;
using namespace graphrec;

namespace {

struct Context {
  std::string cli;
  fs::path workdir;
  std::string dataset_path;
  bool dataset_is_real = false;

  DatasetBundle bundle;
  InteractionGraph graph_train = build_graph({{0, 0}}, 1, 1);
  PropensityTable table_train;

  // criterion 6/7 artifacts, built lazily and shared
  std::map<Strategy, TrainResult<double>> trained;
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const Context& ctx, const std::string& args) {
  const std::string cmd = ctx.cli + " " + args + " >> " +
                          (ctx.workdir / "cli.log").string() + " 2>&1";
  return std::system(cmd.c_str());
}

// ---------------------------------------------------------------------
// criterion 1: sparse operator and propagate match the dense oracle on 50
// random graphs (<= 30 nodes) for all 6 strategy x normalization pairs
bool criterion_operator_oracle(Context&, std::string& detail) {
  Rng rng(1001);
  double max_err = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = 2 + static_cast<Index>(rng.next_index(14));
    const Index n = 2 + static_cast<Index>(rng.next_index(29 - m > 14 ? 14 : 29 - m));
    const InteractionGraph g =
        build_graph(oracle::random_bipartite_edges(rng, m, n, 0.3), m, n);
    const PropensityTable t = estimate_propensity(g);
    MatrixXd h(m + n, 6);
    for (Index r = 0; r < h.rows(); ++r)
      for (Index c = 0; c < 6; ++c) h(r, c) = rng.next_normal();

    for (Strategy s : {Strategy::Mean, Strategy::Propensity, Strategy::Navip}) {
      for (Normalization norm : {Normalization::Symmetric, Normalization::RandomWalk}) {
        const auto op = build_operator<double>(g, &t, s, norm);
        const MatrixXd dense = oracle::dense_operator(g, &t, s, norm);
        MatrixXd sparse_dense = MatrixXd::Zero(m + n, m + n);
        for (Index r = 0; r < op.matrix.rows; ++r)
          for (Index k = op.matrix.offsets[r]; k < op.matrix.offsets[r + 1]; ++k)
            sparse_dense(r, op.matrix.col_idx[k]) = op.matrix.values[k];
        max_err = std::max(max_err, (sparse_dense - dense).cwiseAbs().maxCoeff());
        max_err = std::max(
            max_err, (propagate<double>(op, h) - dense * h).cwiseAbs().maxCoeff());
      }
    }
  }
  std::ostringstream os;
  os << "max |sparse - dense| = " << max_err << " over 50 graphs x 6 combos";
  detail = os.str();
  return max_err <= 1e-9;
}

// criterion 2: random-walk rows sum to 1 +- 1e-9, including at dataset scale
bool criterion_row_stochastic(Context& ctx, std::string& detail) {
  double worst = 0.0;
  const auto check = [&worst](const InteractionGraph& g, const PropensityTable& t) {
    for (Strategy s : {Strategy::Mean, Strategy::Navip}) {
      const auto op = build_operator<double>(g, &t, s, Normalization::RandomWalk);
      for (Index r = 0; r < op.dimension(); ++r) {
        worst = std::max(worst, std::abs(op.matrix.row_sum(r) - 1.0));
      }
    }
  };
  Rng rng(1002);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 2 + static_cast<Index>(rng.next_index(20));
    const Index n = 2 + static_cast<Index>(rng.next_index(20));
    const InteractionGraph g =
        build_graph(oracle::random_bipartite_edges(rng, m, n, 0.25), m, n);
    check(g, estimate_propensity(g));
  }
  check(ctx.graph_train, ctx.table_train);
  std::ostringstream os;
  os << "max |row sum - 1| = " << worst << " (random graphs + dataset train graph)";
  detail = os.str();
  return worst <= 1e-9;
}

// criterion 3: analytic gradients vs central finite differences, 20 random
// instances, both losses, all strategies, rel err < 1e-4
bool criterion_gradients(Context&, std::string& detail) {
  Rng rng(1003);
  double worst = 0.0;
  int instances = 0;
  const std::vector<std::pair<Strategy, Normalization>> combos = {
      {Strategy::Mean, Normalization::Symmetric},
      {Strategy::Mean, Normalization::RandomWalk},
      {Strategy::Propensity, Normalization::Symmetric},
      {Strategy::Propensity, Normalization::RandomWalk},
      {Strategy::Navip, Normalization::Symmetric},
      {Strategy::Navip, Normalization::RandomWalk},
  };
  while (instances < 20) {
    const Index m = 2 + static_cast<Index>(rng.next_index(4));
    const Index n = 2 + static_cast<Index>(rng.next_index(4));
    const InteractionGraph g =
        build_graph(oracle::random_bipartite_edges(rng, m, n, 0.4), m, n);
    bool has_negative = true;
    for (Index u = 0; u < m; ++u) has_negative &= g.user_degree(u) < n;
    if (!has_negative) continue;

    const PropensityTable t = estimate_propensity(g);
    const int depth = static_cast<int>(rng.next_index(4));
    const Index d = 2 + static_cast<Index>(rng.next_index(3));
    const auto model = init_embeddings<double>(m, n, d, rng.next_u64(), depth);
    Rng sampler(rng.next_u64());
    const auto batch = sample_batch(g, sampler, 5);
    const auto& [strategy, norm] = combos[instances % combos.size()];
    const auto op = build_operator<double>(g, &t, strategy, norm);
    const auto op_t = transpose(op.matrix);

    for (const bool ips : {false, true}) {
      const PropensityTable* loss_table = ips ? &t : nullptr;
      const MatrixXd fe = forward(model, op);
      const auto analytic =
          ips ? ips_bpr_loss(fe, model, op_t, batch, 1e-3, t)
              : bpr_loss(fe, model, op_t, batch, 1e-3);
      const MatrixXd numeric = oracle::finite_difference_gradient(
          [&](const MatrixXd& point) {
            EmbeddingModel<double> probe = model;
            probe.embeddings = point;
            const MatrixXd pfe = forward(probe, op);
            return ips ? ips_bpr_loss(pfe, probe, op_t, batch, 1e-3, t).value
                       : bpr_loss(pfe, probe, op_t, batch, 1e-3).value;
          },
          model.embeddings, 1e-5);
      const double scale = std::max({numeric.cwiseAbs().maxCoeff(),
                                     analytic.grad.cwiseAbs().maxCoeff(), 1e-12});
      worst = std::max(worst, (analytic.grad - numeric).cwiseAbs().maxCoeff() / scale);
    }
    ++instances;
  }
  std::ostringstream os;
  os << "max relative gradient error = " << worst << " over 20 instances x 2 losses";
  detail = os.str();
  return worst < 1e-4;
}

// criterion 4: all-negatives evaluation equals a brute-force full-ranking
// oracle exactly on 100 instances; sampled mode is bit-reproducible
bool criterion_metric_oracle(Context&, std::string& detail) {
  Rng rng(1004);
  long cases_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 3 + static_cast<Index>(rng.next_index(5));
    const Index n = 20 + static_cast<Index>(rng.next_index(181));  // <= 200 items
    const InteractionGraph g =
        build_graph(oracle::random_bipartite_edges(rng, m, n, 0.1), m, n);
    MatrixXd fe(m + n, 4);
    for (Index r = 0; r < fe.rows(); ++r)
      for (Index c = 0; c < 4; ++c) fe(r, c) = rng.next_normal();

    EdgeList test_set;
    std::vector<std::vector<Index>> test_items(m);
    for (Index u = 0; u < m; ++u) {
      for (int tries = 0; tries < 40 && test_items[u].size() < 2; ++tries) {
        const Index i = static_cast<Index>(rng.next_index(n));
        if (!g.has_edge(u, i) &&
            std::find(test_items[u].begin(), test_items[u].end(), i) ==
                test_items[u].end()) {
          test_items[u].push_back(i);
          test_set.emplace_back(u, i);
        }
      }
    }
    if (test_set.empty()) continue;

    EvalConfig config;
    config.k_list = {1, 5, 10, 20};
    config.num_negatives = static_cast<int>(n);
    config.seed = rng.next_u64();
    const EvalReport got = evaluate<double>(fe, g, test_set, config);

    std::map<int, double> hr, ndcg;
    for (int k : config.k_list) hr[k] = ndcg[k] = 0.0;
    for (const auto& [u, positive] : test_set) {
      std::vector<double> negative_scores;
      for (Index i = 0; i < n; ++i) {
        const bool excluded =
            g.has_edge(u, i) || std::find(test_items[u].begin(), test_items[u].end(),
                                          i) != test_items[u].end();
        if (!excluded) negative_scores.push_back(score<double>(fe, u, i, m));
      }
      const int rank =
          oracle::full_ranking_rank(negative_scores, score<double>(fe, u, positive, m));
      for (int k : config.k_list) {
        if (rank <= k) {
          hr[k] += 1.0;
          ndcg[k] += 1.0 / std::log2(rank + 1.0);
        }
      }
    }
    for (int k : config.k_list) {
      if (got.hr.at(k) != hr[k] / test_set.size()) {
        detail = "full-ranking HR mismatch";
        return false;
      }
      if (got.ndcg.at(k) != ndcg[k] / test_set.size()) {
        detail = "full-ranking NDCG mismatch";
        return false;
      }
    }
    cases_checked += got.num_cases;

    // sampled mode: identical seeds give identical bytes
    config.num_negatives = 9;
    const std::string once = report_to_json(evaluate<double>(fe, g, test_set, config));
    const std::string twice = report_to_json(evaluate<double>(fe, g, test_set, config));
    if (once != twice) {
      detail = "sampled-mode evaluation not reproducible";
      return false;
    }
  }
  std::ostringstream os;
  os << "exact on 100 instances (" << cases_checked
     << " cases); sampled mode bit-reproducible";
  detail = os.str();
  return true;
}

// criterion 5: dataset-scale propensities match an independent recount of
// train.tsv; toy split selection tracks 1/p weights
bool criterion_propensity_and_split(Context& ctx, std::string& detail) {
  // recount straight from the bundle file, bypassing graph and table code
  std::map<Index, long> counts;
  {
    std::ifstream in(ctx.workdir / "bundle" / "train.tsv");
    if (!in) throw std::runtime_error("missing bundle train.tsv");
    Index u, i;
    while (in >> u >> i) ++counts[i];
  }
  long max_count = 0;
  for (const auto& [i, c] : counts) max_count = std::max(max_count, c);
  double worst = 0.0;
  for (Index i = 0; i < ctx.table_train.num_items(); ++i) {
    const double recount =
        std::sqrt(static_cast<double>(counts[i]) / static_cast<double>(max_count));
    worst = std::max(worst, std::abs(recount - ctx.table_train.item_propensity[i]));
  }
  if (worst > 1e-15) {
    detail = "propensity recount mismatch";
    return false;
  }

  // 2-item toy, degrees 100:1 -> inverse-propensity weights 1:10. The
  // rates are a property of the weighted draw; a drawn degree-1 item would
  // always be returned to train by cold-start repair, so the selection
  // order itself is measured. Two draws of 101 keep the
  // without-replacement saturation inside the 3-sigma band.
  EdgeList edges;
  for (Index u = 0; u < 100; ++u) edges.emplace_back(u, 0);
  edges.emplace_back(100, 1);
  const auto p = relative_popularity(edges, 2);
  long rare_hits = 0;
  const int trials = 1000;
  const int draws = 2;
  for (int seed = 1; seed <= trials; ++seed) {
    const auto order = weighted_sample_order(edges, p, seed);
    for (int r = 0; r < draws; ++r)
      if (edges[order[r]].second == 1) ++rare_hits;
  }
  const double rare_rate = static_cast<double>(rare_hits) / trials;
  const double popular_rate = (draws - rare_rate) / 100.0;
  const double ratio = rare_rate / popular_rate;
  const double sigma_rare = std::sqrt(rare_rate * (1.0 - rare_rate) / trials);
  const double slope = 100.0 * draws / ((draws - rare_rate) * (draws - rare_rate));
  const double sigma_ratio = slope * sigma_rare;
  std::ostringstream os;
  os << "propensity recount exact; toy selection ratio " << ratio << " vs 10 (3 sigma = "
     << 3.0 * sigma_ratio << ")";
  detail = os.str();
  return std::abs(ratio - 10.0) <= 3.0 * sigma_ratio;
}

const TrainConfig kPaperConfig = [] {
  TrainConfig c;
  c.epochs = 100;
  c.batch_size = 256;
  c.learning_rate = 0.003;
  c.l2_weight = 1e-4;
  c.dim = 64;
  c.depth = 3;
  c.seed = 11;
  return c;
}();

const TrainResult<double>& train_strategy(Context& ctx, Strategy strategy) {
  auto it = ctx.trained.find(strategy);
  if (it != ctx.trained.end()) return it->second;
  TrainConfig config = kPaperConfig;
  config.strategy = strategy;
  auto result = train<double>(ctx.graph_train, &ctx.table_train, config);
  return ctx.trained.emplace(strategy, std::move(result)).first->second;
}

MetricSummary evaluate_strategy(Context& ctx, const EmbeddingModel<double>& model,
                                Strategy eval_strategy, int num_seeds = 5) {
  const auto op = build_operator<double>(ctx.graph_train, &ctx.table_train, eval_strategy,
                                         default_normalization(eval_strategy));
  const MatrixXd fe = swap_operator_inference(model, op);
  std::vector<EvalReport> reports;
  for (int seed = 1; seed <= num_seeds; ++seed) {
    EvalConfig config;
    config.seed = static_cast<std::uint64_t>(seed);
    EvalReport r = evaluate<double>(fe, ctx.graph_train, ctx.bundle.test, config);
    r.strategy = eval_strategy;
    reports.push_back(std::move(r));
  }
  return summarize_reports(reports);
}

// criterion 6: pretrain with mean aggregation, swap aggregation at
// inference; seed-averaged HR@10 lands near the reference values with the
// navip >= mean > propensity ordering
bool criterion_reproduction(Context& ctx, std::string& detail, double& mean_hr10,
                            double& navip_hr10, double& prop_hr10) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& mean_run = train_strategy(ctx, Strategy::Mean);
  const MetricSummary mean_eval = evaluate_strategy(ctx, mean_run.model, Strategy::Mean);
  const MetricSummary navip_eval = evaluate_strategy(ctx, mean_run.model, Strategy::Navip);
  const MetricSummary prop_eval =
      evaluate_strategy(ctx, mean_run.model, Strategy::Propensity);
  const double elapsed = seconds_since(t0);

  mean_hr10 = mean_eval.hr_mean.at(10);
  navip_hr10 = navip_eval.hr_mean.at(10);
  prop_hr10 = prop_eval.hr_mean.at(10);

  const bool near = std::abs(mean_hr10 - 0.506) <= 0.04 &&
                    std::abs(navip_hr10 - 0.511) <= 0.04 &&
                    std::abs(prop_hr10 - 0.493) <= 0.04;
  const bool ordered = navip_hr10 >= mean_hr10 && mean_hr10 > prop_hr10;
  const bool in_budget = elapsed < 1800.0;

  std::ostringstream os;
  os << "HR@10 mean/navip/propensity = " << mean_hr10 << "/" << navip_hr10 << "/"
     << prop_hr10 << " vs 0.506/0.511/0.493 (+-0.04); ordering "
     << (ordered ? "holds" : "violated") << "; " << elapsed << " s";
  detail = os.str();
  return near && ordered && in_budget;
}

// criterion 7: train each strategy and evaluate it with itself; ordering
// navip >= mean >= propensity within one standard error of the difference
bool criterion_swap_consistency(Context& ctx, std::string& detail, double swap_gap) {
  std::map<Strategy, MetricSummary> self_eval;
  for (Strategy s : {Strategy::Mean, Strategy::Propensity, Strategy::Navip}) {
    const auto& run = train_strategy(ctx, s);
    self_eval.emplace(s, evaluate_strategy(ctx, run.model, s));
  }
  const auto hr = [&](Strategy s) { return self_eval.at(s).hr_mean.at(10); };
  const auto se = [&](Strategy s) {
    const auto& m = self_eval.at(s);
    return m.hr_std.at(10) / std::sqrt(static_cast<double>(m.num_seeds));
  };
  const auto within_one_se = [&](Strategy a, Strategy b) {
    // a >= b, allowing a shortfall of one standard error of the difference
    const double se_diff = std::sqrt(se(a) * se(a) + se(b) * se(b));
    return hr(a) >= hr(b) - se_diff;
  };
  const bool ordered = within_one_se(Strategy::Navip, Strategy::Mean) &&
                       within_one_se(Strategy::Mean, Strategy::Propensity);

  const double train_gap = hr(Strategy::Navip) - hr(Strategy::Propensity);
  std::ostringstream os;
  os << "self-eval HR@10 navip/mean/propensity = " << hr(Strategy::Navip) << "/"
     << hr(Strategy::Mean) << "/" << hr(Strategy::Propensity)
     << "; navip-propensity gap narrowed from " << swap_gap << " (inference-only swap) to "
     << train_gap << " (trained with each strategy)";
  detail = os.str();
  return ordered;
}

// criterion 8: two identical CLI pipelines produce byte-identical
// checkpoints and reports
bool criterion_determinism(Context& ctx, std::string& detail) {
  const fs::path root = ctx.workdir / "determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string data = (root / "toy.data").string();
  if (run_cli(ctx, "synth --out " + data +
                       " --users 150 --items 220 --interactions 8000 --min-activity 12 "
                       "--seed 3") != 0) {
    detail = "synth failed";
    return false;
  }
  for (const std::string run : {"a", "b"}) {
    const std::string base = (root / run).string();
    if (run_cli(ctx, "prepare --input " + data +
                         " --format movielens_100k --min-degree 5 --test-frac 0.05 "
                         "--val-frac 0.05 --seed 1 --out " + base + "/bundle") != 0 ||
        run_cli(ctx, "train --data " + base + "/bundle --out " + base +
                         "/run --strategy navip --loss ips-bpr --epochs 10 --dim 16 "
                         "--seed 2") != 0 ||
        run_cli(ctx, "evaluate --data " + base + "/bundle --checkpoint " + base +
                         "/run/checkpoint.bin --out " + base +
                         "/eval --eval-strategies mean,propensity,navip --seeds 1..3") != 0) {
      detail = "pipeline " + run + " failed (see cli.log)";
      return false;
    }
  }

  std::vector<std::string> compared;
  const auto same = [&](const fs::path& rel) {
    compared.push_back(rel.string());
    return read_bytes(root / "a" / rel) == read_bytes(root / "b" / rel);
  };
  bool ok = same("run/checkpoint.bin") && same("run/loss_trace.csv") &&
            same("bundle/train.tsv") && same("bundle/test.tsv");
  for (const std::string s : {"mean", "propensity", "navip"}) {
    ok = ok && same("eval/summary_" + s + ".json");
    for (int seed = 1; seed <= 3; ++seed) {
      ok = ok && same("eval/report_" + s + "_seed" + std::to_string(seed) + ".json");
    }
  }
  std::ostringstream os;
  os << (ok ? "byte-identical" : "MISMATCH in") << " " << compared.size()
     << " artifacts across two pipeline replays";
  detail = os.str();
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path workdir = "acceptance_work";
  for (int a = 1; a + 1 < argc; a += 2) {
    const std::string flag = argv[a];
    if (flag == "--cli") cli = argv[a + 1];
    if (flag == "--workdir") workdir = argv[a + 1];
  }
  if (cli.empty()) {
    std::cerr << "usage: acceptance --cli <graphrec binary> [--workdir dir]\n";
    return 2;
  }

  Context ctx;
  ctx.cli = cli;
  ctx.workdir = workdir;
  fs::create_directories(workdir);

  // Dataset-scale input: a real interaction log when provided, otherwise
  // the bundled generator at the same scale.
  if (const char* env = std::getenv("GRAPHREC_ML100K"); env && fs::exists(env)) {
    ctx.dataset_path = env;
    ctx.dataset_is_real = true;
  } else {
    ctx.dataset_path = (workdir / "synthetic_ml.data").string();
    SynthConfig cfg;  // frozen defaults, seed 7
    write_interactions_file(ctx.dataset_path, synthesize_interactions(cfg));
  }
  std::cout << "dataset: " << ctx.dataset_path
            << (ctx.dataset_is_real ? " (real)" : " (bundled generator)") << "\n";

  {
    const auto raw = load_interactions(ctx.dataset_path, FileFormat::Movielens100k);
    const auto filtered = filter_min_degree(raw, 10);
    const auto popularity = relative_popularity(filtered.edges, filtered.num_items());
    const auto split = pseudo_unbiased_split(filtered.edges, popularity, 0.05, 0.05, 1);
    ctx.bundle.user_ids = filtered.user_ids;
    ctx.bundle.item_ids = filtered.item_ids;
    ctx.bundle.train = split.train;
    ctx.bundle.validation = split.validation;
    ctx.bundle.test = split.test;
    save_bundle((workdir / "bundle").string(), ctx.bundle, "{\"command\": \"acceptance\"}");
    ctx.graph_train =
        build_graph(ctx.bundle.train, ctx.bundle.num_users(), ctx.bundle.num_items());
    ctx.table_train = estimate_propensity(ctx.graph_train);
    std::cout << "train graph: " << ctx.graph_train.num_users() << " users, "
              << ctx.graph_train.num_items() << " items, " << ctx.graph_train.num_edges()
              << " edges\n";
  }

  int failures = 0;
  double mean_hr10 = 0, navip_hr10 = 0, prop_hr10 = 0;
  const auto run = [&](int number, const std::string& name, auto&& fn,
                       double budget_seconds = 0.0) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(t0);
    if (budget_seconds > 0.0 && elapsed >= budget_seconds) ok = false;
    std::cout << "[" << number << "/8] " << name << ": " << (ok ? "PASS" : "FAIL") << " ("
              << elapsed << " s) - " << detail << std::endl;
    if (!ok) ++failures;
  };

  run(1, "operator matches dense oracle",
      [&](std::string& d) { return criterion_operator_oracle(ctx, d); }, 10.0);
  run(2, "random-walk row stochasticity",
      [&](std::string& d) { return criterion_row_stochastic(ctx, d); });
  run(3, "gradient finite-difference check",
      [&](std::string& d) { return criterion_gradients(ctx, d); }, 30.0);
  run(4, "ranking metrics vs exhaustive oracle",
      [&](std::string& d) { return criterion_metric_oracle(ctx, d); });
  run(5, "propensity recount and split weighting",
      [&](std::string& d) { return criterion_propensity_and_split(ctx, d); });
  run(6, "desk-scale reproduction (inference-time swap)", [&](std::string& d) {
    return criterion_reproduction(ctx, d, mean_hr10, navip_hr10, prop_hr10);
  });
  run(7, "train-time aggregation consistency", [&](std::string& d) {
    return criterion_swap_consistency(ctx, d, navip_hr10 - prop_hr10);
  });
  run(8, "pipeline determinism",
      [&](std::string& d) { return criterion_determinism(ctx, d); });

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
