#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "specwire/gcn.hpp"
#include "specwire/rng.hpp"
#include "specwire/spectral.hpp"
#include "specwire/trend.hpp"

namespace specwire {

struct SweepConfig {
  Hyperparams hp{};
  TrainSeeds seeds{};
  std::size_t n_splits = 1;  // uses the first n_splits of the dataset's splits
  std::size_t threads = 0;   // 0: hardware concurrency
  double slope_tol = kDefaultSlopeTolerance;
};

/// Step k of a sweep: self-loops train on A + kI, parallel edges on kA + I.
inline RewireConfig sweep_config(RewireMode mode, std::size_t k) {
  if (k < 1) throw ValidationError("sweep step k must be >= 1");
  const auto kk = static_cast<double>(k);
  return mode == RewireMode::self_loop ? RewireConfig{kk, 0.0} : RewireConfig{1.0, kk - 1.0};
}

/// Per-split seeds derived from the base tuple so every (split, point) run is
/// independent of scheduling.
inline TrainSeeds split_seeds(const TrainSeeds& base, std::size_t split) {
  return {hash_draw(base.param_seed, 0x7061, split), hash_draw(base.dropout_seed, 0x6472, split)};
}

namespace detail {

inline std::size_t resolve_threads(std::size_t requested) {
  if (requested) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, count) with at most `threads` in flight.
/// Results are stored by index.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, std::size_t threads, Fn fn) {
  std::vector<T> out(count);
  threads = resolve_threads(threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  for (std::size_t start = 0; start < count; start += threads) {
    const std::size_t stop = std::min(count, start + threads);
    std::vector<std::future<T>> jobs;
    for (std::size_t i = start; i < stop; ++i) jobs.push_back(std::async(std::launch::async, fn, i));
    for (std::size_t i = start; i < stop; ++i) out[i] = jobs[i - start].get();
  }
  return out;
}

inline void check_split_count(const Dataset& data, std::size_t n_splits) {
  if (n_splits < 1) throw ValidationError("n_splits must be >= 1");
  if (n_splits > data.splits.size())
    throw ValidationError("requested " + std::to_string(n_splits) + " splits but the dataset has " +
                          std::to_string(data.splits.size()));
}

}  // namespace detail

inline TrendPoint summarize(double k, std::vector<double> values) {
  TrendPoint p;
  p.k = k;
  const double n = static_cast<double>(values.size());
  for (double v : values) p.mean += v;
  p.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - p.mean) * (v - p.mean);
    p.std = std::sqrt(ss / (n - 1.0));
  }
  p.values = std::move(values);
  return p;
}

/// Mean test metric over the first n_splits splits at one rewiring.
inline TrendPoint evaluate_point(const Dataset& data, const RewireConfig& cfg,
                                 const SweepConfig& sc, double k) {
  const auto in = make_inputs(data.graph, cfg, data.features);
  std::vector<double> values;
  for (std::size_t s = 0; s < sc.n_splits; ++s)
    values.push_back(train_gcn(data, in, sc.hp, split_seeds(sc.seeds, s), s).test_metric);
  return summarize(k, std::move(values));
}

/// Trains at k = 1..k_max and classifies the trend of the mean test metric.
inline TrendReport run_sweep(const Dataset& data, RewireMode mode, std::size_t k_max,
                             const SweepConfig& sc) {
  if (k_max < 3) throw ValidationError("run_sweep: k_max must be >= 3, got " + std::to_string(k_max));
  data.validate();
  detail::check_split_count(data, sc.n_splits);
  auto steps = detail::parallel_map<TrendPoint>(k_max, sc.threads, [&](std::size_t i) {
    const std::size_t k = i + 1;
    try {
      return evaluate_point(data, sweep_config(mode, k), sc, static_cast<double>(k));
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(to_string(mode)) + " sweep at k=" + std::to_string(k) +
                           ": " + e.what());
    }
  });
  return make_trend_report(mode, std::move(steps), sc.slope_tol);
}

struct SweepPair {
  TrendReport self_loop;
  TrendReport parallel_edge;
  CategoryReport category;
};

inline SweepPair run_both_sweeps(const Dataset& data, std::size_t k_max, const SweepConfig& sc) {
  SweepPair p;
  p.self_loop = run_sweep(data, RewireMode::self_loop, k_max, sc);
  p.parallel_edge = run_sweep(data, RewireMode::parallel_edge, k_max, sc);
  p.category = assign_category(p.self_loop.label, p.parallel_edge.label);
  return p;
}

/// Mean metric over α = 1..alpha_max (rows) and parallel-edge step
/// k = 1..gamma_max (columns, γ = k - 1), so row 0 matches the parallel sweep
/// and column 0 the self-loop sweep.
struct GridReport {
  std::vector<double> alphas;
  std::vector<double> gammas;
  Matrix mean;
  Matrix std;

  bool operator==(const GridReport&) const = default;
};

inline GridReport run_grid(const Dataset& data, std::size_t alpha_max, std::size_t gamma_max,
                           const SweepConfig& sc) {
  if (alpha_max < 1 || gamma_max < 1)
    throw ValidationError("run_grid: alpha_max and gamma_max must be >= 1");
  data.validate();
  detail::check_split_count(data, sc.n_splits);
  GridReport g;
  for (std::size_t a = 1; a <= alpha_max; ++a) g.alphas.push_back(static_cast<double>(a));
  for (std::size_t k = 1; k <= gamma_max; ++k) g.gammas.push_back(static_cast<double>(k - 1));
  const auto cells = detail::parallel_map<TrendPoint>(
      alpha_max * gamma_max, sc.threads, [&](std::size_t idx) {
        const RewireConfig cfg{g.alphas[idx / gamma_max], g.gammas[idx % gamma_max]};
        try {
          return evaluate_point(data, cfg, sc, 0.0);
        } catch (const NumericalError& e) {
          throw NumericalError("grid cell (alpha=" + detail::format_double(cfg.alpha) +
                               ", gamma=" + detail::format_double(cfg.gamma) + "): " + e.what());
        }
      });
  g.mean = Matrix(alpha_max, gamma_max);
  g.std = Matrix(alpha_max, gamma_max);
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    g.mean(idx / gamma_max, idx % gamma_max) = cells[idx].mean;
    g.std(idx / gamma_max, idx % gamma_max) = cells[idx].std;
  }
  return g;
}

/// `alpha,gamma,mean,std` rows.
inline void write_grid_csv(std::ostream& out, const GridReport& g) {
  out << "alpha,gamma,mean,std\n";
  for (std::size_t a = 0; a < g.alphas.size(); ++a)
    for (std::size_t c = 0; c < g.gammas.size(); ++c)
      out << detail::format_double(g.alphas[a]) << ',' << detail::format_double(g.gammas[c]) << ','
          << detail::format_double(g.mean(a, c)) << ',' << detail::format_double(g.std(a, c))
          << '\n';
}

// ---------------------------------------------------------------------------
// Benchmark
// ---------------------------------------------------------------------------

enum class BenchOutcome { ok, size_cap_exceeded };

inline const char* to_string(BenchOutcome o) noexcept {
  return o == BenchOutcome::ok ? "ok" : "size_cap_exceeded";
}

inline BenchOutcome bench_outcome_from_string(const std::string& s) {
  if (s == "ok") return BenchOutcome::ok;
  if (s == "size_cap_exceeded") return BenchOutcome::size_cap_exceeded;
  throw ValidationError("unknown bench outcome '" + s + "'");
}

struct BenchTask {
  std::string name;
  BenchOutcome outcome = BenchOutcome::ok;
  double wall_seconds = 0.0;

  bool operator==(const BenchTask&) const = default;
};

struct BenchReport {
  std::size_t n = 0;
  std::size_t m = 0;
  RewireConfig config{};
  std::vector<BenchTask> tasks;

  bool operator==(const BenchReport&) const = default;
};

/// Settings for the small sweep the benchmark times. The sweep trains on
/// every node, two classes (i mod 2), synthetic features.
struct BenchConfig {
  std::size_t cap = kDefaultDenseCap;
  std::size_t k_max = 3;
  std::size_t epochs = 20;
  std::size_t hidden = 16;
  std::size_t feature_dim = 8;
  std::uint64_t seed = 0;
};

/// Times a full eigendecomposition of L̃ (or records that the graph is over
/// the dense cap) and a short self-loop trend sweep. Failures are outcomes,
/// not errors.
inline BenchReport run_bench(const Graph& g, const RewireConfig& cfg, const BenchConfig& bc = {}) {
  using clock = std::chrono::steady_clock;
  const auto seconds_since = [](clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  BenchReport r;
  r.n = g.n();
  r.m = g.edge_count();
  r.config = cfg;

  BenchTask eig{"eigendecomposition", BenchOutcome::ok, 0.0};
  if (g.n() > bc.cap) {
    eig.outcome = BenchOutcome::size_cap_exceeded;
  } else {
    const auto t0 = clock::now();
    (void)laplacian_spectrum(g, cfg, true, bc.cap);
    eig.wall_seconds = seconds_since(t0);
  }
  r.tasks.push_back(eig);

  BenchTask sweep{"trend_sweep", BenchOutcome::ok, 0.0};
  {
    const auto t0 = clock::now();
    Dataset data;
    data.graph = g;
    data.num_classes = 2;
    data.labels.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) data.labels[i] = static_cast<int>(i % 2);
    data.features = synthetic_features(data.labels, 2, bc.feature_dim, 1.0, bc.seed);
    data.splits = make_splits(g.n(), {1.0, 0.0, 0.0}, 1, bc.seed, data.labels);
    SweepConfig sc;
    sc.hp.epochs = bc.epochs;
    sc.hp.hidden = bc.hidden;
    sc.hp.patience = bc.epochs;
    sc.seeds = {bc.seed, bc.seed};
    sc.threads = 1;
    (void)run_sweep(data, RewireMode::self_loop, bc.k_max, sc);
    sweep.wall_seconds = seconds_since(t0);
  }
  r.tasks.push_back(sweep);
  return r;
}

}  // namespace specwire
