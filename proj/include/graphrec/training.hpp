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

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphrec/aggregation.hpp"
#include "graphrec/model.hpp"
#include "graphrec/propensity.hpp"
#include "graphrec/rng.hpp"

namespace graphrec {

enum class LossKind { Bpr, IpsBpr };

inline const char* to_string(LossKind k) { return k == LossKind::Bpr ? "bpr" : "ips-bpr"; }

inline LossKind loss_kind_from_string(const std::string& s) {
  if (s == "bpr") return LossKind::Bpr;
  if (s == "ips-bpr") return LossKind::IpsBpr;
  throw std::invalid_argument("unknown loss '" + s + "' (expected bpr|ips-bpr)");
}

struct TrainConfig {
  int epochs = 100;
  int batch_size = 256;
  double learning_rate = 0.003;
  double l2_weight = 1e-4;
  LossKind loss_kind = LossKind::Bpr;
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::Mean;
  std::optional<Normalization> normalization;  // strategy default when unset
  Index dim = 64;
  int depth = 3;
  double init_scale = 0.1;

  void validate() const {
    if (epochs < 1) throw std::invalid_argument("train config: epochs must be >= 1");
    if (batch_size < 1) throw std::invalid_argument("train config: batch_size must be >= 1");
    if (!(learning_rate > 0)) throw std::invalid_argument("train config: learning rate must be > 0");
    if (l2_weight < 0) throw std::invalid_argument("train config: l2 weight must be >= 0");
    if (dim < 1) throw std::invalid_argument("train config: dim must be >= 1");
    if (depth < 0) throw std::invalid_argument("train config: depth must be >= 0");
  }
};

struct Triple {
  Index user;
  Index pos_item;
  Index neg_item;
};

// One training batch: user uniform, positive uniform over the user's
// items, negative uniform over the rest by rejection.
inline std::vector<Triple> sample_batch(const InteractionGraph& graph, Rng& rng,
                                        int batch_size) {
  std::vector<Triple> batch;
  batch.reserve(batch_size);
  const Index m = graph.num_users();
  const Index n = graph.num_items();
  for (int t = 0; t < batch_size; ++t) {
    const Index u = static_cast<Index>(rng.next_index(m));
    const auto items = graph.items_of(u);
    if (static_cast<Index>(items.size()) == n) {
      throw std::runtime_error("sample_batch: user " + std::to_string(u) +
                               " interacted with every item; no negative exists");
    }
    const Index pos = items[rng.next_index(items.size())];
    Index neg;
    do {
      neg = static_cast<Index>(rng.next_index(n));
    } while (graph.has_edge(u, neg));
    batch.push_back({u, pos, neg});
  }
  return batch;
}

template <typename Scalar = double>
struct LossGrad {
  Scalar value = 0;
  MatrixX<Scalar> grad;  // w.r.t. layer-0 embeddings
};

// grad_layer0 = sum_k alpha_k (A^T)^k grad_final, by Horner's scheme.
// A itself has no parameters; the chain through forward is linear.
template <typename Scalar>
MatrixX<Scalar> backpropagate(const SparseRowMatrix<Scalar>& op_transpose,
                              const VectorX<Scalar>& coeffs,
                              const MatrixX<Scalar>& grad_final) {
  const int depth = static_cast<int>(coeffs.size()) - 1;
  MatrixX<Scalar> acc = coeffs[depth] * grad_final;
  MatrixX<Scalar> scratch;
  for (int k = depth - 1; k >= 0; --k) {
    multiply_into(op_transpose, acc, scratch);
    acc.swap(scratch);
    acc.noalias() += coeffs[k] * grad_final;
  }
  return acc;
}

namespace detail {

inline double stable_sigmoid_neg(double x) {  // sigmoid(-x)
  if (x >= 0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

inline double softplus_neg(double x) {  // log(1 + exp(-x))
  if (x >= 0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

// Shared pairwise ranking loss. Data term per triple:
//   w_t * -ln sigmoid(score(u, pos) - score(u, neg))
// with w_t = 1, or 1/p_pos when a table is given. The L2 term is the mean
// squared norm of the batch's layer-0 rows (counted with multiplicity),
// scaled by l2_weight; it touches layer 0 directly, not the propagated
// embeddings.
template <typename Scalar>
LossGrad<Scalar> pairwise_loss(const MatrixX<Scalar>& final_embeddings,
                               const EmbeddingModel<Scalar>& model,
                               const SparseRowMatrix<Scalar>& op_transpose,
                               std::span<const Triple> batch, double l2_weight,
                               const PropensityTable* table) {
  if (batch.empty()) throw std::invalid_argument("loss: batch must be nonempty");
  const Index m = model.num_users;
  const double inv_b = 1.0 / static_cast<double>(batch.size());

  MatrixX<Scalar> grad_final = MatrixX<Scalar>::Zero(final_embeddings.rows(),
                                                     final_embeddings.cols());
  double data_term = 0.0;
  for (const Triple& t : batch) {
    const Index pos_row = m + t.pos_item;
    const Index neg_row = m + t.neg_item;
    const double weight = table ? inverse_weight(*table, t.pos_item) : 1.0;
    const double margin = static_cast<double>(
        final_embeddings.row(t.user).dot(final_embeddings.row(pos_row)) -
        final_embeddings.row(t.user).dot(final_embeddings.row(neg_row)));
    data_term += weight * softplus_neg(margin) * inv_b;
    const Scalar g = static_cast<Scalar>(-weight * inv_b * stable_sigmoid_neg(margin));
    grad_final.row(t.user) +=
        g * (final_embeddings.row(pos_row) - final_embeddings.row(neg_row));
    grad_final.row(pos_row) += g * final_embeddings.row(t.user);
    grad_final.row(neg_row) -= g * final_embeddings.row(t.user);
  }

  LossGrad<Scalar> result;
  result.grad = backpropagate(op_transpose, model.layer_coeffs, grad_final);

  double reg = 0.0;
  const double reg_coeff = l2_weight / (3.0 * static_cast<double>(batch.size()));
  for (const Triple& t : batch) {
    const Index rows[3] = {t.user, m + t.pos_item, m + t.neg_item};
    for (Index r : rows) {
      reg += reg_coeff * static_cast<double>(model.embeddings.row(r).squaredNorm());
      result.grad.row(r) += static_cast<Scalar>(2.0 * reg_coeff) * model.embeddings.row(r);
    }
  }
  result.value = static_cast<Scalar>(data_term + reg);
  return result;
}

}  // namespace detail

template <typename Scalar>
LossGrad<Scalar> bpr_loss(const MatrixX<Scalar>& final_embeddings,
                          const EmbeddingModel<Scalar>& model,
                          const SparseRowMatrix<Scalar>& op_transpose,
                          std::span<const Triple> batch, double l2_weight) {
  return detail::pairwise_loss(final_embeddings, model, op_transpose, batch, l2_weight,
                               nullptr);
}

// Identical to bpr_loss except each triple's data term carries the inverse
// propensity of its positive item. Reduces to bpr_loss exactly when every
// propensity is 1.
template <typename Scalar>
LossGrad<Scalar> ips_bpr_loss(const MatrixX<Scalar>& final_embeddings,
                              const EmbeddingModel<Scalar>& model,
                              const SparseRowMatrix<Scalar>& op_transpose,
                              std::span<const Triple> batch, double l2_weight,
                              const PropensityTable& table) {
  return detail::pairwise_loss(final_embeddings, model, op_transpose, batch, l2_weight,
                               &table);
}

template <typename Scalar = double>
struct AdamState {
  MatrixX<Scalar> first_moment;
  MatrixX<Scalar> second_moment;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState shaped_like(const MatrixX<Scalar>& params) {
    AdamState s;
    s.first_moment = MatrixX<Scalar>::Zero(params.rows(), params.cols());
    s.second_moment = MatrixX<Scalar>::Zero(params.rows(), params.cols());
    return s;
  }

  void update(MatrixX<Scalar>& params, const MatrixX<Scalar>& grad, double learning_rate) {
    ++step;
    first_moment = beta1 * first_moment + (1.0 - beta1) * grad;
    second_moment.array() =
        beta2 * second_moment.array() + (1.0 - beta2) * grad.array().square();
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
    params.array() -= (learning_rate / c1) * first_moment.array() /
                      ((second_moment.array() / c2).sqrt() + epsilon);
  }
};

template <typename Scalar = double>
struct TrainResult {
  EmbeddingModel<Scalar> model;
  std::vector<double> epoch_loss;
  Normalization normalization = Normalization::Symmetric;
  int epochs_run = 0;
  bool stopped_early = false;
};

// Optional validation hook for early stopping. When `score` is set it is
// called every `check_every` epochs; training stops once `patience`
// consecutive checks fail to improve on the best score seen.
template <typename Scalar = double>
struct EarlyStopping {
  std::function<double(const EmbeddingModel<Scalar>&)> score;
  int check_every = 10;
  int patience = 3;
};

namespace detail {

template <typename Scalar>
std::string nonfinite_rows(const MatrixX<Scalar>& mat, int limit = 8) {
  std::string rows;
  int found = 0;
  for (Index r = 0; r < mat.rows() && found < limit; ++r) {
    if (!mat.row(r).allFinite()) {
      rows += (found ? ", " : "") + std::to_string(r);
      ++found;
    }
  }
  return rows.empty() ? "none" : rows;
}

}  // namespace detail

// Full optimization loop: epochs * ceil(E / batch_size) steps, one Adam
// update per step, forward recomputed under the training operator each
// step. Deterministic given the config seed.
template <typename Scalar = double>
TrainResult<Scalar> train(const InteractionGraph& graph, const PropensityTable* table,
                          const TrainConfig& config,
                          const EarlyStopping<Scalar>& early = {}) {
  config.validate();
  const Normalization norm =
      config.normalization.value_or(default_normalization(config.strategy));
  if (config.loss_kind == LossKind::IpsBpr && table == nullptr) {
    throw std::invalid_argument("train: ips-bpr loss requires a propensity table");
  }
  const AggregationOperator<Scalar> op =
      build_operator<Scalar>(graph, table, config.strategy, norm);
  const SparseRowMatrix<Scalar> op_transpose = transpose(op.matrix);

  TrainResult<Scalar> result;
  result.normalization = norm;
  result.model = init_embeddings<Scalar>(graph.num_users(), graph.num_items(), config.dim,
                                         substream_seed(config.seed, 0), config.depth);
  auto& model = result.model;
  AdamState<Scalar> adam = AdamState<Scalar>::shaped_like(model.embeddings);
  Rng sampler(substream_seed(config.seed, 1));

  const long steps_per_epoch =
      (static_cast<long>(graph.num_edges()) + config.batch_size - 1) / config.batch_size;
  const PropensityTable* loss_table = config.loss_kind == LossKind::IpsBpr ? table : nullptr;

  double best_val = -std::numeric_limits<double>::infinity();
  int checks_without_improvement = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    for (long s = 0; s < steps_per_epoch; ++s) {
      const std::vector<Triple> batch = sample_batch(graph, sampler, config.batch_size);
      const MatrixX<Scalar> final_embeddings = forward(model, op);
      const LossGrad<Scalar> lg = detail::pairwise_loss(
          final_embeddings, model, op_transpose, std::span<const Triple>(batch),
          config.l2_weight, loss_table);
      if (!std::isfinite(static_cast<double>(lg.value))) {
        throw std::runtime_error(
            "train: non-finite loss at epoch " + std::to_string(epoch) + ", step " +
            std::to_string(s) + "; non-finite gradient rows: " +
            detail::nonfinite_rows(lg.grad) + "; non-finite embedding rows: " +
            detail::nonfinite_rows(model.embeddings));
      }
      adam.update(model.embeddings, lg.grad, config.learning_rate);
      epoch_loss += static_cast<double>(lg.value);
    }
    if (!model.embeddings.allFinite()) {
      throw std::runtime_error("train: non-finite embeddings after epoch " +
                               std::to_string(epoch) + "; rows: " +
                               detail::nonfinite_rows(model.embeddings));
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(steps_per_epoch));
    result.epochs_run = epoch + 1;

    if (early.score && (epoch + 1) % early.check_every == 0) {
      const double val = early.score(model);
      if (val > best_val) {
        best_val = val;
        checks_without_improvement = 0;
      } else if (++checks_without_improvement >= early.patience) {
        result.stopped_early = true;
        break;
      }
    }
  }
  return result;
}

}  // namespace graphrec
