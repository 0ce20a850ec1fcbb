#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "specwire/eigen.hpp"
#include "specwire/graph.hpp"
#include "specwire/rewire.hpp"

namespace specwire {

inline constexpr double kZeroTolerance = 1e-8;
inline constexpr std::size_t kDefaultHistogramBins = 20;

/// Which operator a spectrum was taken from.
enum class Operator {
  normalized_laplacian,  // L̃ = I - D^{-1/2} Ā D^{-1/2}
  normalized_adjacency,  // D^{-1/2} Ā D^{-1/2}
  matrix,                // caller-supplied symmetric matrix
};

inline const char* to_string(Operator op) noexcept {
  switch (op) {
    case Operator::normalized_laplacian: return "normalized_laplacian";
    case Operator::normalized_adjacency: return "normalized_adjacency";
    case Operator::matrix: return "matrix";
  }
  return "matrix";
}

inline Operator operator_from_string(const std::string& s) {
  if (s == "normalized_laplacian") return Operator::normalized_laplacian;
  if (s == "normalized_adjacency") return Operator::normalized_adjacency;
  if (s == "matrix") return Operator::matrix;
  throw ValidationError("unknown spectrum source '" + s + "'");
}

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::optional<Matrix> eigenvectors;
  Operator source = Operator::matrix;
  RewireConfig config{};

  std::size_t size() const noexcept { return eigenvalues.size(); }
  bool laplacian_family() const noexcept { return source == Operator::normalized_laplacian; }
};

/// D^{-1/2} Ā D^{-1/2} with loop weights on the diagonal of Ā.
inline Matrix normalized_adjacency(const Graph& g) {
  const auto n = g.n();
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = g.degree(i);
    if (!(d > 0.0))
      throw ValidationError("node " + std::to_string(i) +
                            " has zero degree; add self-loops before normalizing");
    inv_sqrt[i] = 1.0 / std::sqrt(d);
  }
  Matrix m(n, n);
  for (const auto& e : g.edges()) {
    const double v = e.weight * inv_sqrt[e.u] * inv_sqrt[e.v];
    m(e.u, e.v) = v;
    m(e.v, e.u) = v;
  }
  for (std::size_t i = 0; i < n; ++i) m(i, i) = g.loop_weight(i) / g.degree(i);
  return m;
}

/// I - normalized_adjacency(rewire(g, cfg)).
inline Matrix normalized_laplacian(const Graph& g, const RewireConfig& cfg = {}) {
  Matrix m = normalized_adjacency(rewire(g, cfg));
  m *= -1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += 1.0;
  return m;
}

inline Spectrum eigendecompose(const Matrix& m, bool want_vectors = false,
                               std::size_t cap = kDefaultDenseCap,
                               Operator source = Operator::matrix, RewireConfig cfg = {}) {
  auto eig = eigh(m, want_vectors, cap);
  return Spectrum{std::move(eig.values), std::move(eig.vectors), source, cfg};
}

/// Spectrum of L̃ for the rewired graph.
inline Spectrum laplacian_spectrum(const Graph& g, const RewireConfig& cfg = {},
                                   bool want_vectors = false,
                                   std::size_t cap = kDefaultDenseCap) {
  if (g.n() > cap) throw SizeCapError(g.n(), cap);
  return eigendecompose(normalized_laplacian(g, cfg), want_vectors, cap,
                        Operator::normalized_laplacian, cfg);
}

/// Spectrum of D̃^{-1/2} Ã D̃^{-1/2} for the rewired graph.
inline Spectrum adjacency_spectrum(const Graph& g, const RewireConfig& cfg = {},
                                   bool want_vectors = false,
                                   std::size_t cap = kDefaultDenseCap) {
  if (g.n() > cap) throw SizeCapError(g.n(), cap);
  return eigendecompose(normalized_adjacency(rewire(g, cfg)), want_vectors, cap,
                        Operator::normalized_adjacency, cfg);
}

// ---------------------------------------------------------------------------
// Spectrum statistics
// ---------------------------------------------------------------------------

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges over [0, 2]
  std::vector<std::size_t> counts;
};

struct SpectrumStats {
  std::size_t lower_count = 0;   // λ < 1
  std::size_t higher_count = 0;  // λ ≥ 1
  std::size_t zero_count = 0;    // |λ| ≤ tol
  double tol = kZeroTolerance;
  Histogram histogram;
};

/// Frequency split at 1 plus an equal-width histogram over [0, 2]. Values
/// within `tol` of 1 count as high frequencies (so a computed 1 - 1e-16
/// still lands in λ ≥ 1); values just outside [0, 2] clamp into the end bins.
inline SpectrumStats spectrum_stats(const Spectrum& s, double tol = kZeroTolerance,
                                    std::size_t bins = kDefaultHistogramBins) {
  if (bins == 0) throw ValidationError("spectrum_stats: bins must be >= 1");
  if (!(tol >= 0.0)) throw ValidationError("spectrum_stats: tol must be >= 0");
  SpectrumStats st;
  st.tol = tol;
  st.histogram.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    st.histogram.edges[b] = 2.0 * static_cast<double>(b) / static_cast<double>(bins);
  st.histogram.counts.assign(bins, 0);
  for (double lambda : s.eigenvalues) {
    if (lambda < 1.0 - tol)
      ++st.lower_count;
    else
      ++st.higher_count;
    if (std::fabs(lambda) <= tol) ++st.zero_count;
    const double pos = std::clamp(lambda, 0.0, 2.0) / 2.0 * static_cast<double>(bins);
    auto b = static_cast<std::size_t>(pos);
    if (b >= bins) b = bins - 1;
    ++st.histogram.counts[b];
  }
  return st;
}

/// `bin_lo,bin_hi,count` rows.
inline void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    out << detail::format_double(h.edges[b]) << ',' << detail::format_double(h.edges[b + 1])
        << ',' << h.counts[b] << '\n';
}

// ---------------------------------------------------------------------------
// Spectral filtering: g * x = U diag(g̃) Uᵀ x
// ---------------------------------------------------------------------------

inline std::vector<double> graph_fourier(const Spectrum& s, std::span<const double> x) {
  if (!s.eigenvectors) throw ValidationError("graph_fourier: spectrum has no eigenvectors");
  const Matrix& u = *s.eigenvectors;
  if (x.size() != u.rows())
    throw ValidationError("graph_fourier: signal length " + std::to_string(x.size()) +
                          " != " + std::to_string(u.rows()));
  std::vector<double> xhat(u.cols(), 0.0);
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t k = 0; k < u.cols(); ++k) xhat[k] += u(i, k) * x[i];
  return xhat;
}

inline std::vector<double> graph_filter(const Spectrum& s, std::span<const double> x,
                                        std::span<const double> coefficients) {
  if (!s.eigenvectors) throw ValidationError("graph_filter: spectrum has no eigenvectors");
  if (coefficients.size() != s.size())
    throw ValidationError("graph_filter: " + std::to_string(coefficients.size()) +
                          " coefficients for " + std::to_string(s.size()) + " eigenvalues");
  auto xhat = graph_fourier(s, x);
  for (std::size_t k = 0; k < xhat.size(); ++k) xhat[k] *= coefficients[k];
  const Matrix& u = *s.eigenvectors;
  std::vector<double> y(u.rows(), 0.0);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < u.cols(); ++k) acc += u(i, k) * xhat[k];
    y[i] = acc;
  }
  return y;
}

/// GCN's spectral response g̃(λ) = 1 - λ: passes λ < 1, flips sign above.
inline std::vector<double> gcn_filter_response(const Spectrum& s) {
  std::vector<double> g(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) g[k] = 1.0 - s.eigenvalues[k];
  return g;
}

}  // namespace specwire
