#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's eigensolver or normalization code.

#include <algorithm>
#include <cmath>
#include <vector>

#include "specwire/dense.hpp"
#include "specwire/graph.hpp"
#include "specwire/rng.hpp"

namespace oracle {

using specwire::Matrix;

/// Cyclic Jacobi rotations; slow and simple. Returns ascending eigenvalues.
inline std::vector<double> jacobi_eigenvalues(Matrix a, int max_sweeps = 100) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  std::sort(d.begin(), d.end());
  return d;
}

/// I - D^{-1/2} M D^{-1/2} where D = rowsum(M), straight from the formula.
inline Matrix normalized_laplacian_of(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i] += m(i, j);
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      l(i, j) = (i == j ? 1.0 : 0.0) - m(i, j) / std::sqrt(d[i] * d[j]);
  return l;
}

/// (γ+1)A + αI on a dense 0/1 adjacency.
inline Matrix rewired(const Matrix& a, double alpha, double gamma) {
  Matrix m = a;
  m *= (gamma + 1.0);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += alpha;
  return m;
}

inline Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
  specwire::SplitMix64 rng(seed, 99);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
  return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

/// Dense 0/1 adjacency from an explicit pair list.
inline Matrix adjacency_from_pairs(std::size_t n,
                                   const std::vector<std::pair<int, int>>& pairs) {
  Matrix a(n, n);
  for (auto [u, v] : pairs) a(u, v) = a(v, u) = 1.0;
  return a;
}

}  // namespace oracle
