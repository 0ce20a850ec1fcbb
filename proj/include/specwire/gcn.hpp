#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specwire/dense.hpp"
#include "specwire/graph.hpp"
#include "specwire/rewire.hpp"
#include "specwire/rng.hpp"
#include "specwire/spectral.hpp"

namespace specwire {

// ---------------------------------------------------------------------------
// Data
// ---------------------------------------------------------------------------

using Mask = std::vector<std::uint8_t>;

struct Split {
  Mask train;
  Mask valid;
  Mask test;

  bool operator==(const Split&) const = default;
};

struct SplitRatios {
  double train = 0.6;
  double valid = 0.2;
  double test = 0.2;
};

inline std::size_t mask_count(const Mask& m) {
  return static_cast<std::size_t>(std::count(m.begin(), m.end(), std::uint8_t{1}));
}

/// Seeded shuffles cut into train/valid/test with floor rounding; when the
/// ratios sum to 1 the rounding remainder goes to test. If labels are given,
/// every class must land in train: a shuffle that misses one is redrawn, up
/// to 100 times per split.
inline std::vector<Split> make_splits(std::size_t n, SplitRatios ratios, std::size_t n_splits,
                                      std::uint64_t seed, std::span<const int> labels = {}) {
  if (n_splits < 1) throw ValidationError("make_splits: n_splits must be >= 1");
  if (ratios.train < 0 || ratios.valid < 0 || ratios.test < 0)
    throw ValidationError("make_splits: ratios must be nonnegative");
  const double sum = ratios.train + ratios.valid + ratios.test;
  if (sum > 1.0 + 1e-9) throw ValidationError("make_splits: ratios sum to more than 1");
  if (!labels.empty() && labels.size() != n)
    throw ValidationError("make_splits: label count does not match n");

  const auto floor_of = [n](double r) {
    return static_cast<std::size_t>(std::floor(r * static_cast<double>(n) + 1e-9));
  };
  const std::size_t n_train = floor_of(ratios.train);
  const std::size_t n_valid = floor_of(ratios.valid);
  const std::size_t n_test =
      std::fabs(sum - 1.0) <= 1e-9 ? n - n_train - n_valid : floor_of(ratios.test);
  if (n_train == 0) throw ValidationError("make_splits: train split would be empty");

  std::vector<int> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  std::vector<Split> splits;
  splits.reserve(n_splits);
  for (std::size_t s = 0; s < n_splits; ++s) {
    bool done = false;
    for (std::size_t attempt = 0; attempt < 100 && !done; ++attempt) {
      SplitMix64 rng(seed, s * 1000 + attempt);
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      shuffle(perm, rng);
      Split sp{Mask(n, 0), Mask(n, 0), Mask(n, 0)};
      for (std::size_t k = 0; k < n_train; ++k) sp.train[perm[k]] = 1;
      for (std::size_t k = n_train; k < n_train + n_valid; ++k) sp.valid[perm[k]] = 1;
      for (std::size_t k = n_train + n_valid; k < n_train + n_valid + n_test; ++k)
        sp.test[perm[k]] = 1;
      bool all_present = true;
      for (int c : classes) {
        bool found = false;
        for (std::size_t k = 0; k < n_train && !found; ++k) found = labels[perm[k]] == c;
        if (!found) {
          all_present = false;
          break;
        }
      }
      if (all_present) {
        splits.push_back(std::move(sp));
        done = true;
      }
    }
    if (!done)
      throw ValidationError("make_splits: could not place every class in train for split " +
                            std::to_string(s) + " after 100 tries");
  }
  return splits;
}

enum class MetricKind { accuracy, roc_auc };

inline const char* to_string(MetricKind m) noexcept {
  return m == MetricKind::accuracy ? "accuracy" : "roc_auc";
}

inline MetricKind metric_from_string(const std::string& s) {
  if (s == "accuracy") return MetricKind::accuracy;
  if (s == "roc_auc") return MetricKind::roc_auc;
  throw ValidationError("unknown metric '" + s + "'");
}

struct Dataset {
  Graph graph;
  Matrix features;  // n × d
  std::vector<int> labels;
  std::size_t num_classes = 0;
  std::vector<Split> splits;
  std::uint64_t split_seed = 0;
  MetricKind metric = MetricKind::accuracy;

  void validate() const {
    const auto n = graph.n();
    if (features.rows() != n)
      throw ValidationError("dataset: " + std::to_string(features.rows()) +
                            " feature rows for " + std::to_string(n) + " nodes");
    if (labels.size() != n)
      throw ValidationError("dataset: " + std::to_string(labels.size()) + " labels for " +
                            std::to_string(n) + " nodes");
    for (int y : labels)
      if (y < 0 || static_cast<std::size_t>(y) >= num_classes)
        throw ValidationError("dataset: label " + std::to_string(y) + " outside [0, " +
                              std::to_string(num_classes) + ")");
    if (metric == MetricKind::roc_auc && num_classes != 2)
      throw ValidationError("dataset: roc_auc needs exactly 2 classes");
    for (const auto& s : splits) {
      if (s.train.size() != n || s.valid.size() != n || s.test.size() != n)
        throw ValidationError("dataset: split mask length mismatch");
      for (std::size_t i = 0; i < n; ++i)
        if (s.train[i] + s.valid[i] + s.test[i] > 1)
          throw ValidationError("dataset: split masks overlap at node " + std::to_string(i));
    }
  }
};

/// Class means drawn N(0, I); xᵢ = signal·μ_{yᵢ} + N(0, I) noise.
inline Matrix synthetic_features(std::span<const int> labels, std::size_t num_classes,
                                 std::size_t dim, double signal, std::uint64_t seed) {
  SplitMix64 mean_rng(seed, 1);
  Matrix means(num_classes, dim);
  for (double& v : means.data()) v = mean_rng.normal();
  SplitMix64 noise_rng(seed, 2);
  Matrix x(labels.size(), dim);
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j)
      x(i, j) = signal * means(static_cast<std::size_t>(labels[i]), j) + noise_rng.normal();
  return x;
}

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

struct Hyperparams {
  std::size_t hidden = 64;
  double dropout = 0.5;
  double learning_rate = 0.01;
  double weight_decay = 5e-4;
  std::size_t epochs = 200;
  std::size_t patience = 50;
};

struct TrainSeeds {
  std::uint64_t param_seed = 0;
  std::uint64_t dropout_seed = 0;
};

inline constexpr double kLayerNormEps = 1e-5;

/// Two-layer GCN: Z = Â · dropout(LayerNorm(ReLU(Â X W0))) · W1.
struct GcnModel {
  Matrix w0;  // d × h
  Matrix w1;  // h × c
  std::vector<double> gain;
  std::vector<double> bias;

  std::vector<std::span<double>> params() {
    return {w0.data(), w1.data(), gain, bias};
  }

  static GcnModel zeros_like(const GcnModel& m) {
    return {Matrix(m.w0.rows(), m.w0.cols()), Matrix(m.w1.rows(), m.w1.cols()),
            std::vector<double>(m.gain.size(), 0.0), std::vector<double>(m.bias.size(), 0.0)};
  }
};

/// Glorot-uniform weights, unit gain, zero bias.
inline GcnModel init_gcn(std::size_t in_dim, std::size_t hidden, std::size_t classes,
                         std::uint64_t seed) {
  if (in_dim == 0 || hidden == 0 || classes == 0)
    throw ValidationError("init_gcn: dimensions must be positive");
  SplitMix64 rng(seed, 7);
  GcnModel m{Matrix(in_dim, hidden), Matrix(hidden, classes), std::vector<double>(hidden, 1.0),
             std::vector<double>(hidden, 0.0)};
  const double l0 = std::sqrt(6.0 / static_cast<double>(in_dim + hidden));
  for (double& v : m.w0.data()) v = rng.uniform(-l0, l0);
  const double l1 = std::sqrt(6.0 / static_cast<double>(hidden + classes));
  for (double& v : m.w1.data()) v = rng.uniform(-l1, l1);
  return m;
}

/// Propagation operator plus the fixed product Â·X, computed once per graph.
struct GcnInputs {
  Matrix a_hat;
  Matrix ax;
};

inline GcnInputs make_inputs(const Matrix& a_hat, const Matrix& features) {
  if (!a_hat.square() || a_hat.rows() != features.rows())
    throw ValidationError("make_inputs: propagation matrix does not match feature rows");
  return {a_hat, matmul(a_hat, features)};
}

inline GcnInputs make_inputs(const Graph& g, const RewireConfig& cfg, const Matrix& features) {
  return make_inputs(normalized_adjacency(rewire(g, cfg)), features);
}

/// Inverted-dropout mask: entries 0 or 1/(1-rate).
inline Matrix dropout_mask(std::size_t rows, std::size_t cols, double rate, std::uint64_t seed,
                           std::uint64_t stream) {
  if (!(rate >= 0.0 && rate < 1.0)) throw ValidationError("dropout rate must lie in [0, 1)");
  Matrix m(rows, cols, 1.0);
  if (rate == 0.0) return m;
  SplitMix64 rng(seed, stream);
  const double keep = 1.0 / (1.0 - rate);
  for (double& v : m.data()) v = rng.uniform() < rate ? 0.0 : keep;
  return m;
}

struct ForwardCache {
  Matrix pre;     // Â X W0
  Matrix xhat;    // normalized ReLU activations
  std::vector<double> inv_std;
  Matrix hidden;  // after LayerNorm affine and dropout
  Matrix q;       // Â · hidden
  Matrix logits;  // q · W1
};

/// `mask` null means eval mode (no dropout).
inline ForwardCache forward(const GcnModel& model, const GcnInputs& in,
                            const Matrix* mask = nullptr) {
  if (in.ax.cols() != model.w0.rows())
    throw ValidationError("forward: feature dim " + std::to_string(in.ax.cols()) +
                          " != model input dim " + std::to_string(model.w0.rows()));
  if (model.w0.cols() != model.w1.rows() || model.gain.size() != model.w0.cols() ||
      model.bias.size() != model.w0.cols())
    throw ValidationError("forward: inconsistent model shapes");
  const std::size_t n = in.ax.rows();
  const std::size_t h = model.w0.cols();
  if (mask && (mask->rows() != n || mask->cols() != h))
    throw ValidationError("forward: dropout mask shape mismatch");

  ForwardCache c;
  c.pre = matmul(in.ax, model.w0);
  c.xhat = Matrix(n, h);
  c.hidden = Matrix(n, h);
  c.inv_std.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto pre = c.pre.row(i);
    double mean = 0.0;
    for (double v : pre) mean += std::max(v, 0.0);
    mean /= static_cast<double>(h);
    double var = 0.0;
    for (double v : pre) {
      const double dv = std::max(v, 0.0) - mean;
      var += dv * dv;
    }
    var /= static_cast<double>(h);
    const double inv = 1.0 / std::sqrt(var + kLayerNormEps);
    c.inv_std[i] = inv;
    for (std::size_t j = 0; j < h; ++j) {
      const double xh = (std::max(pre[j], 0.0) - mean) * inv;
      c.xhat(i, j) = xh;
      double out = model.gain[j] * xh + model.bias[j];
      if (mask) out *= (*mask)(i, j);
      c.hidden(i, j) = out;
    }
  }
  c.q = matmul(in.a_hat, c.hidden);
  c.logits = matmul(c.q, model.w1);
  return c;
}

/// Class scores. Train mode draws a dropout mask from (seed, stream).
inline Matrix forward(const GcnModel& model, const Matrix& a_hat, const Matrix& features,
                      bool train_mode, double dropout_rate = 0.5, std::uint64_t seed = 0,
                      std::uint64_t stream = 0) {
  const auto in = make_inputs(a_hat, features);
  if (!train_mode) return forward(model, in).logits;
  const auto mask = dropout_mask(in.ax.rows(), model.w0.cols(), dropout_rate, seed, stream);
  return forward(model, in, &mask).logits;
}

struct LossAndGrads {
  double loss = 0.0;
  GcnModel grads;
};

/// Masked mean softmax cross-entropy + (wd/2)(‖W0‖² + ‖W1‖²), with gradients
/// for every parameter by backpropagation.
inline LossAndGrads loss_and_grads(const GcnModel& model, const GcnInputs& in,
                                   std::span<const int> labels, const Mask& train_mask,
                                   double weight_decay, const Matrix* mask = nullptr) {
  const std::size_t n = in.ax.rows();
  if (labels.size() != n || train_mask.size() != n)
    throw ValidationError("loss_and_grads: label/mask length mismatch");
  const std::size_t n_train = mask_count(train_mask);
  if (n_train == 0) throw ValidationError("loss_and_grads: train mask selects no nodes");

  const auto c = forward(model, in, mask);
  const std::size_t classes = model.w1.cols();
  const std::size_t h = model.w0.cols();

  LossAndGrads out;
  out.grads = GcnModel::zeros_like(model);
  Matrix d_logits(n, classes);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!train_mask[i]) continue;
    const auto z = c.logits.row(i);
    const double zmax = *std::max_element(z.begin(), z.end());
    double denom = 0.0;
    for (double v : z) denom += std::exp(v - zmax);
    const double log_denom = std::log(denom) + zmax;
    const auto y = static_cast<std::size_t>(labels[i]);
    if (y >= classes) throw ValidationError("loss_and_grads: label out of range");
    loss += log_denom - z[y];
    for (std::size_t k = 0; k < classes; ++k) {
      const double p = std::exp(z[k] - log_denom);
      d_logits(i, k) = (p - (k == y ? 1.0 : 0.0)) / static_cast<double>(n_train);
    }
  }
  loss /= static_cast<double>(n_train);
  double sq = 0.0;
  for (double v : model.w0.data()) sq += v * v;
  for (double v : model.w1.data()) sq += v * v;
  loss += 0.5 * weight_decay * sq;
  out.loss = loss;

  // Z = Q W1
  out.grads.w1 = matmul_tn(c.q, d_logits);
  Matrix d_q = matmul_nt(d_logits, model.w1);
  // Q = Â H, Â symmetric
  Matrix d_hidden = matmul_tn(in.a_hat, d_q);
  // H = mask ⊙ (gain ⊙ x̂ + bias); x̂ = LayerNorm(ReLU(pre))
  Matrix d_pre(n, h);
  std::vector<double> d_xhat(h);
  for (std::size_t i = 0; i < n; ++i) {
    double mean_dx = 0.0;
    double mean_dx_x = 0.0;
    for (std::size_t j = 0; j < h; ++j) {
      double dn = d_hidden(i, j);
      if (mask) dn *= (*mask)(i, j);
      out.grads.gain[j] += dn * c.xhat(i, j);
      out.grads.bias[j] += dn;
      d_xhat[j] = dn * model.gain[j];
      mean_dx += d_xhat[j];
      mean_dx_x += d_xhat[j] * c.xhat(i, j);
    }
    mean_dx /= static_cast<double>(h);
    mean_dx_x /= static_cast<double>(h);
    for (std::size_t j = 0; j < h; ++j) {
      const double d_relu = c.inv_std[i] * (d_xhat[j] - mean_dx - c.xhat(i, j) * mean_dx_x);
      d_pre(i, j) = c.pre(i, j) > 0.0 ? d_relu : 0.0;
    }
  }
  out.grads.w0 = matmul_tn(in.ax, d_pre);

  for (std::size_t k = 0; k < model.w0.data().size(); ++k)
    out.grads.w0.data()[k] += weight_decay * model.w0.data()[k];
  for (std::size_t k = 0; k < model.w1.data().size(); ++k)
    out.grads.w1.data()[k] += weight_decay * model.w1.data()[k];
  return out;
}

// ---------------------------------------------------------------------------
// Optimizer
// ---------------------------------------------------------------------------

/// Adam (Kingma & Ba) with bias correction over a fixed list of parameter blocks.
class Adam {
 public:
  Adam(std::vector<std::size_t> block_sizes, double lr, double beta1 = 0.9, double beta2 = 0.999,
       double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
    for (auto s : block_sizes) {
      m_.emplace_back(s, 0.0);
      v_.emplace_back(s, 0.0);
    }
  }

  void step(std::vector<std::span<double>> params, const std::vector<std::span<double>>& grads) {
    if (params.size() != m_.size() || grads.size() != m_.size())
      throw ValidationError("Adam: parameter block count changed");
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (std::size_t b = 0; b < params.size(); ++b) {
      auto& m = m_[b];
      auto& v = v_[b];
      if (params[b].size() != m.size() || grads[b].size() != m.size())
        throw ValidationError("Adam: parameter block size changed");
      for (std::size_t k = 0; k < m.size(); ++k) {
        const double g = grads[b][k];
        m[k] = beta1_ * m[k] + (1.0 - beta1_) * g;
        v[k] = beta2_ * v[k] + (1.0 - beta2_) * g * g;
        params[b][k] -= lr_ * (m[k] / c1) / (std::sqrt(v[k] / c2) + eps_);
      }
    }
  }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::size_t t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// Mann-Whitney AUC: probability a random positive outscores a random
/// negative, ties counting 1/2. Labels are 0/1.
inline double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ValidationError("roc_auc: length mismatch");
  std::size_t pos = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw ValidationError("roc_auc: labels must be 0 or 1");
    pos += static_cast<std::size_t>(y);
  }
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw ValidationError("roc_auc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of average ranks of the positives.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks i+1..j
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] == 1) rank_sum += avg_rank;
    i = j;
  }
  const double p = static_cast<double>(pos);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

inline double masked_accuracy(const Matrix& logits, std::span<const int> labels, const Mask& mask) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    if (!mask[i]) continue;
    const auto z = logits.row(i);
    const auto pred = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
    correct += pred == labels[i];
    ++total;
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

/// Binary ROC-AUC on mask rows with score z₁ - z₀. Single-class masks give 0.5.
inline double masked_roc_auc(const Matrix& logits, std::span<const int> labels, const Mask& mask) {
  std::vector<double> s;
  std::vector<int> y;
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    if (!mask[i]) continue;
    s.push_back(logits(i, 1) - logits(i, 0));
    y.push_back(labels[i]);
  }
  const auto pos = std::count(y.begin(), y.end(), 1);
  if (pos == 0 || pos == static_cast<std::ptrdiff_t>(y.size())) return 0.5;
  return roc_auc(s, y);
}

inline double evaluate(MetricKind kind, const Matrix& logits, std::span<const int> labels,
                       const Mask& mask) {
  return kind == MetricKind::accuracy ? masked_accuracy(logits, labels, mask)
                                      : masked_roc_auc(logits, labels, mask);
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

inline constexpr double kDivergenceLoss = 1e6;

struct TrainResult {
  MetricKind metric = MetricKind::accuracy;
  std::vector<double> train_loss;    // per epoch
  std::vector<double> valid_metric;  // per epoch
  std::size_t best_epoch = 0;        // 0-based
  double best_valid = 0.0;
  double test_metric = 0.0;  // from the best epoch's parameters

  bool operator==(const TrainResult&) const = default;
};

namespace detail {

inline void check_loss(double loss, std::size_t epoch) {
  if (!std::isfinite(loss))
    throw NumericalError("training loss is not finite at epoch " + std::to_string(epoch));
  if (loss > kDivergenceLoss)
    throw NumericalError("training diverged at epoch " + std::to_string(epoch) + " (loss " +
                         std::to_string(loss) + ")");
}

}  // namespace detail

/// One full-batch run on split `split_index`. Adam steps each epoch; the
/// model with the best validation metric (earliest on ties) supplies the
/// test metric; training stops after `patience` epochs without improvement.
inline TrainResult train_gcn(const Dataset& data, const GcnInputs& in, const Hyperparams& hp,
                             const TrainSeeds& seeds, std::size_t split_index) {
  if (split_index >= data.splits.size())
    throw ValidationError("train: split index " + std::to_string(split_index) + " out of range");
  if (hp.epochs == 0) throw ValidationError("train: epochs must be >= 1");
  const Split& sp = data.splits[split_index];

  GcnModel model = init_gcn(data.features.cols(), hp.hidden, data.num_classes, seeds.param_seed);
  Adam opt({model.w0.data().size(), model.w1.data().size(), model.gain.size(), model.bias.size()},
           hp.learning_rate);

  TrainResult r;
  r.metric = data.metric;
  r.best_valid = -1.0;
  std::size_t since_best = 0;
  for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
    const Matrix mask = dropout_mask(in.ax.rows(), hp.hidden, hp.dropout, seeds.dropout_seed,
                                     split_index * 1'000'003ULL + epoch);
    auto lg = loss_and_grads(model, in, data.labels, sp.train, hp.weight_decay,
                             hp.dropout > 0.0 ? &mask : nullptr);
    detail::check_loss(lg.loss, epoch);
    opt.step(model.params(), lg.grads.params());
    r.train_loss.push_back(lg.loss);

    const Matrix logits = forward(model, in).logits;
    const double valid = evaluate(data.metric, logits, data.labels, sp.valid);
    r.valid_metric.push_back(valid);
    if (valid > r.best_valid) {
      r.best_valid = valid;
      r.best_epoch = epoch;
      r.test_metric = evaluate(data.metric, logits, data.labels, sp.test);
      since_best = 0;
    } else if (++since_best >= hp.patience) {
      break;
    }
  }
  return r;
}

inline TrainResult train(const Dataset& data, const RewireConfig& cfg, const Hyperparams& hp,
                         const TrainSeeds& seeds, std::size_t split_index) {
  data.validate();
  return train_gcn(data, make_inputs(data.graph, cfg, data.features), hp, seeds, split_index);
}

/// Graph-blind softmax regression on X alone, trained like the GCN (same
/// optimizer, decay, early stopping), as a baseline.
inline TrainResult train_logistic(const Dataset& data, const Hyperparams& hp, std::uint64_t seed,
                                  std::size_t split_index) {
  data.validate();
  if (split_index >= data.splits.size())
    throw ValidationError("train_logistic: split index out of range");
  const Split& sp = data.splits[split_index];
  const std::size_t n = data.features.rows();
  const std::size_t d = data.features.cols();
  const std::size_t c = data.num_classes;
  const std::size_t n_train = mask_count(sp.train);
  if (n_train == 0) throw ValidationError("train_logistic: train mask selects no nodes");

  SplitMix64 rng(seed, 11);
  Matrix w(d, c);
  const double lim = std::sqrt(6.0 / static_cast<double>(d + c));
  for (double& v : w.data()) v = rng.uniform(-lim, lim);
  std::vector<double> b(c, 0.0);
  Adam opt({w.data().size(), b.size()}, hp.learning_rate);

  const auto logits_of = [&] {
    Matrix z = matmul(data.features, w);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < c; ++k) z(i, k) += b[k];
    return z;
  };

  TrainResult r;
  r.metric = data.metric;
  r.best_valid = -1.0;
  std::size_t since_best = 0;
  for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
    const Matrix z = logits_of();
    Matrix dz(n, c);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!sp.train[i]) continue;
      const auto zi = z.row(i);
      const double zmax = *std::max_element(zi.begin(), zi.end());
      double denom = 0.0;
      for (double v : zi) denom += std::exp(v - zmax);
      const double log_denom = std::log(denom) + zmax;
      const auto y = static_cast<std::size_t>(data.labels[i]);
      loss += log_denom - zi[y];
      for (std::size_t k = 0; k < c; ++k)
        dz(i, k) = (std::exp(zi[k] - log_denom) - (k == y ? 1.0 : 0.0)) /
                   static_cast<double>(n_train);
    }
    loss /= static_cast<double>(n_train);
    double sq = 0.0;
    for (double v : w.data()) sq += v * v;
    loss += 0.5 * hp.weight_decay * sq;
    detail::check_loss(loss, epoch);

    Matrix gw = matmul_tn(data.features, dz);
    for (std::size_t k = 0; k < gw.data().size(); ++k) gw.data()[k] += hp.weight_decay * w.data()[k];
    std::vector<double> gb(c, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < c; ++k) gb[k] += dz(i, k);
    opt.step({w.data(), b}, {gw.data(), gb});
    r.train_loss.push_back(loss);

    const Matrix zz = logits_of();
    const double valid = evaluate(data.metric, zz, data.labels, sp.valid);
    r.valid_metric.push_back(valid);
    if (valid > r.best_valid) {
      r.best_valid = valid;
      r.best_epoch = epoch;
      r.test_metric = evaluate(data.metric, zz, data.labels, sp.test);
      since_best = 0;
    } else if (++since_best >= hp.patience) {
      break;
    }
  }
  return r;
}

}  // namespace specwire
