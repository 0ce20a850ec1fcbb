#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "specwire/error.hpp"
#include "specwire/rewire.hpp"

namespace specwire {

inline constexpr double kDefaultSlopeTolerance = 1e-6;

enum class TrendLabel { increasing, decreasing, flat };

inline const char* to_string(TrendLabel t) noexcept {
  switch (t) {
    case TrendLabel::increasing: return "Increasing";
    case TrendLabel::decreasing: return "Decreasing";
    case TrendLabel::flat: return "Flat";
  }
  return "Flat";
}

inline TrendLabel trend_from_string(const std::string& s) {
  if (s == "Increasing") return TrendLabel::increasing;
  if (s == "Decreasing") return TrendLabel::decreasing;
  if (s == "Flat") return TrendLabel::flat;
  throw ValidationError("unknown trend label '" + s + "'");
}

struct TrendPoint {
  double k = 0.0;
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> values;  // one per split

  bool operator==(const TrendPoint&) const = default;
};

struct TrendFit {
  double slope = 0.0;
  double spearman = 0.0;
  TrendLabel label = TrendLabel::flat;
};

namespace detail {

// Average ranks (1-based), ties share the mean of their positions.
inline std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) r[order[t]] = avg;
    i = j;
  }
  return r;
}

inline double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace detail

/// Spearman rank correlation; 0 when either side is constant.
inline double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("spearman: length mismatch");
  const auto ra = detail::average_ranks(a);
  const auto rb = detail::average_ranks(b);
  return detail::pearson(ra, rb);
}

inline double least_squares_slope(std::span<const double> k, std::span<const double> y) {
  const double n = static_cast<double>(k.size());
  const double mk = std::accumulate(k.begin(), k.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    num += (k[i] - mk) * (y[i] - my);
    den += (k[i] - mk) * (k[i] - mk);
  }
  return num / den;
}

/// Sign of the least-squares slope of mean vs k, with |slope| ≤ slope_tol
/// reported as Flat. Needs at least 3 points with strictly ascending k.
inline TrendFit classify_trend(std::span<const double> k, std::span<const double> mean,
                               double slope_tol = kDefaultSlopeTolerance) {
  if (k.size() != mean.size()) throw ValidationError("classify_trend: length mismatch");
  if (k.size() < 3)
    throw ValidationError("classify_trend: need at least 3 points, got " +
                          std::to_string(k.size()));
  for (std::size_t i = 1; i < k.size(); ++i)
    if (!(k[i] > k[i - 1])) throw ValidationError("classify_trend: k must be strictly ascending");
  for (double v : mean)
    if (!std::isfinite(v)) throw ValidationError("classify_trend: non-finite metric");
  TrendFit f;
  f.slope = least_squares_slope(k, mean);
  f.spearman = spearman(k, mean);
  f.label = f.slope > slope_tol    ? TrendLabel::increasing
            : f.slope < -slope_tol ? TrendLabel::decreasing
                                   : TrendLabel::flat;
  return f;
}

/// Series at k = 1, 2, ...
inline TrendFit classify_trend(std::span<const double> mean,
                               double slope_tol = kDefaultSlopeTolerance) {
  std::vector<double> k(mean.size());
  std::iota(k.begin(), k.end(), 1.0);
  return classify_trend(k, mean, slope_tol);
}

struct TrendReport {
  RewireMode mode = RewireMode::self_loop;
  std::vector<TrendPoint> steps;
  double slope = 0.0;
  double spearman = 0.0;
  double slope_tol = kDefaultSlopeTolerance;
  TrendLabel label = TrendLabel::flat;

  bool operator==(const TrendReport&) const = default;
};

inline TrendReport make_trend_report(RewireMode mode, std::vector<TrendPoint> steps,
                                     double slope_tol = kDefaultSlopeTolerance) {
  std::vector<double> k, m;
  for (const auto& s : steps) {
    k.push_back(s.k);
    m.push_back(s.mean);
  }
  const auto fit = classify_trend(k, m, slope_tol);
  return {mode, std::move(steps), fit.slope, fit.spearman, slope_tol, fit.label};
}

// ---------------------------------------------------------------------------
// Categories
// ---------------------------------------------------------------------------

enum class Category { A, B, C, D, undetermined };

inline const char* to_string(Category c) noexcept {
  switch (c) {
    case Category::A: return "A";
    case Category::B: return "B";
    case Category::C: return "C";
    case Category::D: return "D";
    case Category::undetermined: return "Undetermined";
  }
  return "Undetermined";
}

inline Category category_from_string(const std::string& s) {
  if (s == "A") return Category::A;
  if (s == "B") return Category::B;
  if (s == "C") return Category::C;
  if (s == "D") return Category::D;
  if (s == "Undetermined") return Category::undetermined;
  throw ValidationError("unknown category '" + s + "'");
}

struct CategoryReport {
  TrendLabel self_loop = TrendLabel::flat;
  TrendLabel parallel_edge = TrendLabel::flat;
  Category category = Category::undetermined;
  std::string interpretation;

  bool operator==(const CategoryReport&) const = default;
};

/// Fixed text per category. It restates the two trends in terms of how each
/// rewiring moves the eigenvalues of L̃; it is not computed from the data.
inline std::string category_interpretation(Category c) {
  switch (c) {
    case Category::A:
      return "Accuracy rises as self-loops contract the spectrum toward 0 and also rises as "
             "parallel edges expand it toward 2.";
    case Category::B:
      return "Accuracy rises as self-loops contract the spectrum toward 0 and falls as parallel "
             "edges expand it toward 2.";
    case Category::C:
      return "Accuracy falls as self-loops contract the spectrum toward 0 and rises as parallel "
             "edges expand it toward 2.";
    case Category::D:
      return "Accuracy falls as self-loops contract the spectrum toward 0 and also falls as "
             "parallel edges expand it toward 2.";
    case Category::undetermined:
      return "At least one sweep has |slope| within tolerance, so no category is assigned.";
  }
  return {};
}

/// (↑,↑)→A, (↑,↓)→B, (↓,↑)→C, (↓,↓)→D; anything Flat → Undetermined.
inline CategoryReport assign_category(TrendLabel self_loop, TrendLabel parallel_edge) {
  CategoryReport r{self_loop, parallel_edge, Category::undetermined, {}};
  if (self_loop != TrendLabel::flat && parallel_edge != TrendLabel::flat) {
    const bool sl_up = self_loop == TrendLabel::increasing;
    const bool pe_up = parallel_edge == TrendLabel::increasing;
    r.category = sl_up ? (pe_up ? Category::A : Category::B) : (pe_up ? Category::C : Category::D);
  }
  r.interpretation = category_interpretation(r.category);
  return r;
}

}  // namespace specwire
