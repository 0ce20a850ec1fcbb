#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "specwire/dense.hpp"
#include "specwire/error.hpp"

namespace specwire {

inline constexpr std::size_t kDefaultDenseCap = 4000;
inline constexpr double kSymmetryTolerance = 1e-10;

struct SymmetricEigen {
  std::vector<double> values;     // ascending
  std::optional<Matrix> vectors;  // column k pairs with values[k]
};

namespace detail {

// Householder reduction of a symmetric matrix to tridiagonal form, keeping
// the orthogonal transform in v. After the call d holds the diagonal and
// e[1..n-1] the subdiagonal. EISPACK tred2 lineage (Martin, Reinsch,
// Wilkinson), 0-based.
inline void tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(v.rows());
  for (int j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::fabs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate transformations.
  for (int i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (int k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e), applying rotations to v when
// `vectors` is set. EISPACK tql2 lineage.
inline void tridiagonal_ql(Matrix& v, std::vector<double>& d, std::vector<double>& e,
                           bool vectors) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  constexpr int kMaxIterations = 60;

  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
    int m = l;
    while (m < n - 1) {
      if (std::fabs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxIterations)
          throw NumericalError("tridiagonal QL did not converge for eigenvalue " +
                               std::to_string(l));
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (vectors) {
            for (int k = 0; k < n; ++k) {
              h = v(k, i + 1);
              v(k, i + 1) = s * v(k, i) + c * h;
              v(k, i) = c * v(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace detail

/// Full eigendecomposition of a dense symmetric matrix.
///
/// Eigenvalues come back ascending. Eigenvectors are orthonormal columns,
/// each flipped so its largest-magnitude entry (first one on ties) is
/// positive. Deterministic for a fixed input.
inline SymmetricEigen eigh(const Matrix& m, bool want_vectors = true,
                           std::size_t cap = kDefaultDenseCap) {
  if (!m.square())
    throw ValidationError("eigendecomposition needs a square matrix, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  const std::size_t n = m.rows();
  if (n > cap) throw SizeCapError(n, cap);
  for (double x : m.data())
    if (!std::isfinite(x)) throw NumericalError("eigendecomposition input has non-finite entries");
  const double asym = asymmetry(m);
  if (asym > kSymmetryTolerance * std::max(1.0, m.max_abs()))
    throw ValidationError("matrix is not symmetric (max |a_ij - a_ji| = " + std::to_string(asym) +
                          ")");

  SymmetricEigen out;
  if (n == 0) {
    if (want_vectors) out.vectors = Matrix(0, 0);
    return out;
  }

  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v(i, j) = 0.5 * (m(i, j) + m(j, i));
  std::vector<double> d(n), e(n);
  detail::tridiagonalize(v, d, e);
  detail::tridiagonal_ql(v, d, e, want_vectors);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = d[order[k]];

  if (want_vectors) {
    Matrix u(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t src = order[k];
      std::size_t arg = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::fabs(v(i, src)) > std::fabs(v(arg, src))) arg = i;
      const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i) u(i, k) = sign * v(i, src);
    }
    out.vectors = std::move(u);
  }
  return out;
}

inline std::vector<double> eigvalsh(const Matrix& m, std::size_t cap = kDefaultDenseCap) {
  return eigh(m, false, cap).values;
}

}  // namespace specwire
