#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "specwire/spectral.hpp"

// Executable checks for the spectral claims about self-loop and
// parallel-edge rewiring: the λ_max upper bounds, the extremal-eigenvalue
// bounds of D̃^{-1/2} A D̃^{-1/2}, the [-1, 1] range and eigenvalue
// monotonicity on regular graphs, the Laplacian scaling identities, and the
// first-order perturbation expansions.

namespace specwire {

inline constexpr double kBoundTolerance = 1e-9;
inline constexpr double kDegenerateGap = 1e-6;
inline constexpr double kMaxPerturbation = 1e-2;
inline constexpr double kPerturbationNoiseFloor = 1e-11;

namespace detail {

inline void require_loop_free(const Graph& g, const char* what) {
  if (g.has_loops())
    throw ValidationError(std::string(what) + ": input graph must not carry self-loops");
}

inline std::vector<double> require_positive_degrees(const Graph& g, const char* what) {
  auto d = g.degrees();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(d[i] > 0.0))
      throw ValidationError(std::string(what) + ": node " + std::to_string(i) +
                            " has zero degree");
  return d;
}

inline void require_param(double p, const char* what) {
  if (!std::isfinite(p) || p < 0.0)
    throw ValidationError(std::string(what) + ": multiplicity must be >= 0");
}

}  // namespace detail

/// k if every node has off-diagonal degree exactly k >= 1 and there are no
/// loops, otherwise nullopt.
inline std::optional<double> regular_degree(const Graph& g) {
  if (g.n() == 0 || g.has_loops()) return std::nullopt;
  const double k = g.degree(0);
  if (!(k >= 1.0)) return std::nullopt;
  for (std::size_t i = 1; i < g.n(); ++i)
    if (g.degree(i) != k) return std::nullopt;
  return k;
}

// ---------------------------------------------------------------------------
// λ_max bounds and the δ₁/δₙ bounds they rest on
// ---------------------------------------------------------------------------

struct BoundReport {
  RewireMode mode = RewireMode::self_loop;
  double param = 0.0;
  bool connected = true;  // false: bounds computed anyway, flagged as a warning
  double max_degree = 0.0;
  double min_degree = 0.0;
  double beta1 = 0.0;   // smallest eigenvalue of D^{-1/2} A D^{-1/2}
  double delta1 = 0.0;  // smallest eigenvalue of D̃^{-1/2} A D̃^{-1/2}
  double deltan = 0.0;  // largest eigenvalue of D̃^{-1/2} A D̃^{-1/2}

  double lemma_bound = 0.0;
  double observed = 0.0;  // λ_max of L̃ for the rewired graph
  double slack = 0.0;     // lemma_bound - observed
  bool holds = false;

  double delta1_bound = 0.0;  // δ₁ ≥ delta1_bound
  bool delta1_holds = false;
  double deltan_bound = 0.0;  // δₙ ≤ min d / (α + min d)
  bool deltan_holds = false;
  double deltan_max_degree_bound = 0.0;  // δₙ ≤ max d / (α + max d), the Rayleigh-quotient bound
  bool deltan_max_degree_holds = false;
};

/// For self-loops (p = α):
///   λ_max(L̃_α) ≤ max d (1 - β₁) / (α + max d)
///   δ₁ ≥ max d / (α + max d) · β₁,   δₙ ≤ min d / (α + min d)
/// with D̃ = D + αI. For parallel edges (p = γ, one self-loop per node):
///   λ_max(L̃_γ) ≤ (1+γ) max d (1 - β₁) / (1 + (1+γ) max d)
///   δ₁ ≥ max d / (1 + (1+γ) max d) · β₁,   δₙ ≤ min d / (1 + (1+γ) min d)
/// with D̃ = (1+γ)D + I.
inline BoundReport verify_lemma_bounds(const Graph& g, RewireMode mode, double param,
                                       std::size_t cap = kDefaultDenseCap) {
  detail::require_param(param, "verify_lemma_bounds");
  detail::require_loop_free(g, "verify_lemma_bounds");
  const auto d = detail::require_positive_degrees(g, "verify_lemma_bounds");
  if (g.n() > cap) throw SizeCapError(g.n(), cap);

  BoundReport r;
  r.mode = mode;
  r.param = param;
  r.connected = is_connected(g);
  r.max_degree = *std::max_element(d.begin(), d.end());
  r.min_degree = *std::min_element(d.begin(), d.end());
  r.beta1 = eigvalsh(normalized_adjacency(g), cap).front();

  // D̃ diagonal for the chosen rewiring, then D̃^{-1/2} A D̃^{-1/2}.
  std::vector<double> aug(g.n());
  for (std::size_t i = 0; i < g.n(); ++i)
    aug[i] = mode == RewireMode::self_loop ? d[i] + param : (1.0 + param) * d[i] + 1.0;
  Matrix scaled(g.n(), g.n());
  for (const auto& e : g.edges()) {
    const double v = e.weight / std::sqrt(aug[e.u] * aug[e.v]);
    scaled(e.u, e.v) = v;
    scaled(e.v, e.u) = v;
  }
  const auto deltas = eigvalsh(scaled, cap);
  r.delta1 = deltas.front();
  r.deltan = deltas.back();

  const auto cfg = config_for(mode, param);
  r.observed = eigvalsh(normalized_laplacian(g, cfg), cap).back();

  const double dmax = r.max_degree;
  const double dmin = r.min_degree;
  if (mode == RewireMode::self_loop) {
    r.lemma_bound = dmax * (1.0 - r.beta1) / (param + dmax);
    r.delta1_bound = dmax / (param + dmax) * r.beta1;
    r.deltan_bound = dmin / (param + dmin);
    r.deltan_max_degree_bound = dmax / (param + dmax);
  } else {
    const double s = 1.0 + param;
    r.lemma_bound = s * dmax * (1.0 - r.beta1) / (1.0 + s * dmax);
    r.delta1_bound = dmax / (1.0 + s * dmax) * r.beta1;
    r.deltan_bound = dmin / (1.0 + s * dmin);
    r.deltan_max_degree_bound = dmax / (1.0 + s * dmax);
  }
  r.slack = r.lemma_bound - r.observed;
  r.holds = r.slack >= -kBoundTolerance;
  r.delta1_holds = r.delta1 - r.delta1_bound >= -kBoundTolerance;
  r.deltan_holds = r.deltan_bound - r.deltan >= -kBoundTolerance;
  r.deltan_max_degree_holds = r.deltan_max_degree_bound - r.deltan >= -kBoundTolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Regular graphs: range of Ã_N and monotonicity of L̃
// ---------------------------------------------------------------------------

struct RangeReport {
  RewireMode mode = RewireMode::self_loop;
  double param = 0.0;
  double degree = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool pass = false;  // all eigenvalues of Ã_N in [-1 - tol, 1 + tol]
};

inline RangeReport verify_range_regular(const Graph& g, RewireMode mode, double param,
                                        std::size_t cap = kDefaultDenseCap) {
  detail::require_param(param, "verify_range_regular");
  const auto k = regular_degree(g);
  if (!k) throw ValidationError("verify_range_regular: graph is not k-regular with k >= 1");
  const auto values = adjacency_spectrum(g, config_for(mode, param), false, cap).eigenvalues;
  RangeReport r;
  r.mode = mode;
  r.param = param;
  r.degree = *k;
  r.min_eigenvalue = values.front();
  r.max_eigenvalue = values.back();
  r.pass = r.min_eigenvalue >= -1.0 - kBoundTolerance && r.max_eigenvalue <= 1.0 + kBoundTolerance;
  return r;
}

/// Sorted L̃ eigenvalues (one row per parameter) along a rewiring ladder.
inline Matrix spectral_trajectory(const Graph& g, RewireMode mode, std::span<const double> params,
                                  std::size_t cap = kDefaultDenseCap) {
  Matrix rows(params.size(), g.n());
  for (std::size_t t = 0; t < params.size(); ++t) {
    detail::require_param(params[t], "spectral_trajectory");
    const auto values = laplacian_spectrum(g, config_for(mode, params[t]), false, cap).eigenvalues;
    std::copy(values.begin(), values.end(), rows.row(t).begin());
  }
  return rows;
}

struct TrajectoryCheck {
  bool monotone = true;          // non-increasing (self-loop) / non-decreasing (parallel edge)
  double worst_violation = 0.0;  // largest step against the expected direction
  bool steps_shrinking = true;   // |Δλ| non-increasing from one step to the next
  double worst_step_growth = 0.0;
};

/// Checks each eigenvalue index along the ladder. Entries of the first row
/// with |λ| ≤ zero_tol are skipped (zero eigenvalues do not move).
inline TrajectoryCheck analyze_trajectory(const Matrix& traj, RewireMode mode,
                                          double tol = kBoundTolerance,
                                          double zero_tol = kZeroTolerance) {
  TrajectoryCheck c;
  const double sign = mode == RewireMode::self_loop ? 1.0 : -1.0;
  for (std::size_t i = 0; i < traj.cols(); ++i) {
    if (traj.rows() > 0 && std::fabs(traj(0, i)) <= zero_tol) continue;
    double prev_step = std::numeric_limits<double>::infinity();
    for (std::size_t t = 1; t < traj.rows(); ++t) {
      const double step = traj(t, i) - traj(t - 1, i);
      const double against = sign * step;  // > 0 means the wrong direction
      c.worst_violation = std::max(c.worst_violation, against);
      if (against > tol) c.monotone = false;
      const double mag = std::fabs(step);
      if (std::isfinite(prev_step)) {
        const double growth = mag - prev_step;
        c.worst_step_growth = std::max(c.worst_step_growth, growth);
        if (growth > tol) c.steps_shrinking = false;
      }
      prev_step = mag;
    }
  }
  return c;
}

struct MonotonicityReport {
  RewireMode mode = RewireMode::self_loop;
  std::vector<double> params;
  Matrix eigenvalues;  // row t = sorted spectrum of L̃ at params[t]
  bool pass = false;
  double worst_violation = 0.0;
};

/// Sorted L̃ eigenvalues are elementwise non-increasing in α (self-loops) and
/// non-decreasing in γ (parallel edges) on k-regular graphs.
inline MonotonicityReport verify_monotonicity(const Graph& g, RewireMode mode,
                                              std::span<const double> params,
                                              std::size_t cap = kDefaultDenseCap) {
  if (!regular_degree(g))
    throw ValidationError("verify_monotonicity: graph is not k-regular with k >= 1");
  if (params.size() < 2) throw ValidationError("verify_monotonicity: need at least 2 parameters");
  for (std::size_t t = 1; t < params.size(); ++t)
    if (!(params[t] > params[t - 1]))
      throw ValidationError("verify_monotonicity: parameters must be strictly ascending");
  MonotonicityReport r;
  r.mode = mode;
  r.params.assign(params.begin(), params.end());
  r.eigenvalues = spectral_trajectory(g, mode, params, cap);
  // Zero eigenvalues are included here: they must stay put, which the
  // tolerance admits.
  const auto c = analyze_trajectory(r.eigenvalues, mode, kBoundTolerance, -1.0);
  r.pass = c.monotone;
  r.worst_violation = c.worst_violation;
  return r;
}

// ---------------------------------------------------------------------------
// Laplacian scaling identities under parallel edges
// ---------------------------------------------------------------------------

struct CorollaryReport {
  double alpha = 0.0;
  double gamma = 0.0;
  double unnormalized_max_diff = 0.0;  // |L(rewire(g,(α,γ))) - (γ+1) L(g)|_max
  bool unnormalized_exact = false;     // diff == 0
  bool normalized_applicable = false;  // loop-free with all degrees > 0
  double normalized_max_diff = 0.0;    // |L̃(add_parallel_edges(g,γ)) - L̃(g)|_max
  bool normalized_unchanged = false;   // diff ≤ 1e-12
  double with_loops_max_diff = 0.0;    // |L̃(rewire(g,(α,γ))) - L̃(rewire(g,(α,0)))|_max
  bool pass = false;
};

inline CorollaryReport verify_corollary(const Graph& g, double alpha, double gamma) {
  RewireConfig{alpha, gamma}.validate();
  CorollaryReport r;
  r.alpha = alpha;
  r.gamma = gamma;
  Matrix scaled = laplacian(g);
  scaled *= (gamma + 1.0);
  r.unnormalized_max_diff = max_abs_diff(laplacian(rewire(g, {alpha, gamma})), scaled);
  r.unnormalized_exact = r.unnormalized_max_diff == 0.0;

  bool positive = !g.has_loops();
  for (std::size_t i = 0; positive && i < g.n(); ++i) positive = g.degree(i) > 0.0;
  r.normalized_applicable = positive;
  if (positive) {
    r.normalized_max_diff =
        max_abs_diff(normalized_laplacian(add_parallel_edges(g, gamma)), normalized_laplacian(g));
    r.normalized_unchanged = r.normalized_max_diff <= 1e-12;
  }

  bool loops_ok = true;
  for (std::size_t i = 0; loops_ok && i < g.n(); ++i) loops_ok = g.degree(i) + alpha > 0.0;
  if (loops_ok && alpha > 0.0)
    r.with_loops_max_diff = max_abs_diff(normalized_laplacian(g, {alpha, gamma}),
                                         normalized_laplacian(g, {alpha, 0.0}));

  const double tol = 1e-12 * std::max(1.0, scaled.max_abs());
  r.pass = r.unnormalized_max_diff <= tol && (!positive || r.normalized_unchanged);
  return r;
}

// ---------------------------------------------------------------------------
// First-order perturbation of A_N = D^{-1/2} A D^{-1/2}
// ---------------------------------------------------------------------------

/// Per-node diagonal term F⁽²⁾ᵢ: α/(α+dᵢ)·xᵢ² for self-loops,
/// 1/(1+(1+γ)dᵢ)·xᵢ² for parallel edges.
inline std::vector<double> f2_terms(std::span<const double> degrees, std::span<const double> x,
                                    RewireMode mode, double param) {
  if (degrees.size() != x.size()) throw ValidationError("f2_terms: length mismatch");
  std::vector<double> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double scale = mode == RewireMode::self_loop ? param / (param + degrees[i])
                                                       : 1.0 / (1.0 + (1.0 + param) * degrees[i]);
    f[i] = scale * x[i] * x[i];
  }
  return f;
}

/// Off-diagonal coefficient F⁽¹⁾ᵢⱼ (multiplies A_ij xᵢ xⱼ).
inline double f1_coefficient(double di, double dj, RewireMode mode, double param) {
  if (mode == RewireMode::self_loop)
    return 1.0 / std::sqrt((param + di) * (param + dj)) - 1.0 / std::sqrt(di * dj);
  const double s = 1.0 + param;
  return s / std::sqrt((1.0 + s * di) * (1.0 + s * dj)) - 1.0 / std::sqrt(di * dj);
}

struct PerturbationEntry {
  std::size_t index = 0;
  double eigenvalue = 0.0;  // of A_N
  bool simple = true;       // false: within kDegenerateGap of a neighbor, comparison skipped
  double f1_term = 0.0;     // Σ_{i≠j} F⁽¹⁾ᵢⱼ A_ij xᵢ xⱼ
  double f2_term = 0.0;     // Σᵢ F⁽²⁾ᵢ
  double predicted = 0.0;   // f1_term + f2_term = xᵀ δA_N x
  double actual = 0.0;      // λ_index(A_N perturbed) - λ_index(A_N)
  double discrepancy = 0.0;
};

struct PerturbationReport {
  RewireMode mode = RewireMode::self_loop;
  double param = 0.0;
  std::vector<PerturbationEntry> entries;
};

/// Compares the first-order eigenvalue shift xᵀ(δA_N)x against the shift
/// obtained by re-decomposing the perturbed normalized adjacency.
/// Self-loops perturb A by αI; parallel edges scale A by (1+γ) and add one
/// self-loop per node.
inline PerturbationReport verify_perturbation(const Graph& g, RewireMode mode, double param,
                                              std::size_t cap = kDefaultDenseCap) {
  detail::require_param(param, "verify_perturbation");
  if (param > kMaxPerturbation)
    throw ValidationError("verify_perturbation: multiplicity must be <= 1e-2 (got " +
                          std::to_string(param) + ")");
  detail::require_loop_free(g, "verify_perturbation");
  if (!is_connected(g)) throw ValidationError("verify_perturbation: graph must be connected");
  const auto d = detail::require_positive_degrees(g, "verify_perturbation");

  const auto base = eigh(normalized_adjacency(g), true, cap);
  const auto& u = *base.vectors;
  const auto perturbed = eigvalsh(normalized_adjacency(rewire(g, config_for(mode, param))), cap);

  PerturbationReport r;
  r.mode = mode;
  r.param = param;
  const std::size_t n = g.n();
  r.entries.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& e = r.entries[k];
    e.index = k;
    e.eigenvalue = base.values[k];
    double gap = std::numeric_limits<double>::infinity();
    if (k > 0) gap = std::min(gap, base.values[k] - base.values[k - 1]);
    if (k + 1 < n) gap = std::min(gap, base.values[k + 1] - base.values[k]);
    e.simple = gap >= kDegenerateGap;

    const auto x = u.column(k);
    double f1 = 0.0;
    for (const auto& edge : g.edges())
      f1 += 2.0 * f1_coefficient(d[edge.u], d[edge.v], mode, param) * edge.weight * x[edge.u] *
            x[edge.v];
    double f2 = 0.0;
    for (double t : f2_terms(d, x, mode, param)) f2 += t;
    e.f1_term = f1;
    e.f2_term = f2;
    e.predicted = f1 + f2;
    e.actual = perturbed[k] - base.values[k];
    e.discrepancy = e.simple ? std::fabs(e.predicted - e.actual) : 0.0;
  }
  return r;
}

struct DecayEntry {
  std::size_t index = 0;
  double discrepancy = 0.0;       // at param
  double discrepancy_half = 0.0;  // at param / 2
  double ratio = 0.0;
  enum class Kind { quadratic, exact, skipped } kind = Kind::skipped;
};

inline const char* to_string(DecayEntry::Kind k) noexcept {
  switch (k) {
    case DecayEntry::Kind::quadratic: return "quadratic";
    case DecayEntry::Kind::exact: return "exact";
    case DecayEntry::Kind::skipped: return "skipped";
  }
  return "skipped";
}

struct DecayReport {
  RewireMode mode = RewireMode::self_loop;
  double param = 0.0;
  std::vector<DecayEntry> entries;
  bool pass = false;  // every quadratic entry has ratio in [lo, hi]
};

/// Halving test for the first-order expansion: a discrepancy that is O(p²)
/// drops by ~4 when p halves. Entries whose discrepancy is already below the
/// noise floor are first-order exact (regular graphs hit this for every
/// index) and have no meaningful ratio.
inline DecayReport perturbation_decay(const Graph& g, RewireMode mode, double param,
                                      double ratio_lo = 3.5, double ratio_hi = 4.5,
                                      double noise_floor = kPerturbationNoiseFloor) {
  const auto full = verify_perturbation(g, mode, param);
  const auto half = verify_perturbation(g, mode, param / 2.0);
  DecayReport r;
  r.mode = mode;
  r.param = param;
  r.pass = true;
  for (std::size_t k = 0; k < full.entries.size(); ++k) {
    DecayEntry e;
    e.index = k;
    e.discrepancy = full.entries[k].discrepancy;
    e.discrepancy_half = half.entries[k].discrepancy;
    if (!full.entries[k].simple) {
      e.kind = DecayEntry::Kind::skipped;
    } else if (e.discrepancy < noise_floor) {
      e.kind = DecayEntry::Kind::exact;
    } else {
      e.kind = DecayEntry::Kind::quadratic;
      e.ratio = e.discrepancy / e.discrepancy_half;
      if (!(e.ratio >= ratio_lo && e.ratio <= ratio_hi)) r.pass = false;
    }
    r.entries.push_back(e);
  }
  return r;
}

/// Σᵢ F⁽²⁾ᵢ for eigenvector `index` of A_N at each parameter.
inline std::vector<double> f2_profile(const Graph& g, RewireMode mode, std::size_t index,
                                      std::span<const double> params,
                                      std::size_t cap = kDefaultDenseCap) {
  const auto d = detail::require_positive_degrees(g, "f2_profile");
  const auto base = eigh(normalized_adjacency(g), true, cap);
  if (index >= g.n()) throw ValidationError("f2_profile: eigenvector index out of range");
  const auto x = base.vectors->column(index);
  std::vector<double> out;
  out.reserve(params.size());
  for (double p : params) {
    detail::require_param(p, "f2_profile");
    double s = 0.0;
    for (double t : f2_terms(d, x, mode, p)) s += t;
    out.push_back(s);
  }
  return out;
}

}  // namespace specwire
