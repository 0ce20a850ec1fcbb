#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "specwire/randgraph.hpp"
#include "specwire/spectral.hpp"

using namespace specwire;

namespace {

Spectrum values_only(std::vector<double> v) {
  Spectrum s;
  s.eigenvalues = std::move(v);
  s.source = Operator::normalized_laplacian;
  return s;
}

}  // namespace

TEST(NormalizedAdjacency, K2WithOneLoop) {
  const auto m = normalized_adjacency(add_self_loops(gen_complete(2), 1.0));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_DOUBLE_EQ(m(i, j), 0.5);
}

TEST(NormalizedAdjacency, K3WithOneLoopIsAPlusIOverThree) {
  const auto m = normalized_adjacency(add_self_loops(gen_complete(3), 1.0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(m(i, j), 1.0 / 3.0, 4.0 * std::numeric_limits<double>::epsilon() / 3.0);
}

TEST(NormalizedAdjacency, SingleNodeWithLoop) {
  const auto m = normalized_adjacency(Graph(1, {}, {1.0}));
  EXPECT_EQ(m(0, 0), 1.0);
}

TEST(LaplacianSpectrum, K2ClosedForms) {
  const auto k2 = gen_complete(2);
  const auto a = laplacian_spectrum(k2, {1.0, 0.0}).eigenvalues;
  EXPECT_NEAR(a[0], 0.0, 1e-15);
  EXPECT_NEAR(a[1], 1.0, 1e-15);
  const auto b = laplacian_spectrum(k2, {2.0, 0.0}).eigenvalues;
  EXPECT_NEAR(b[1], 2.0 / 3.0, 1e-15);
  const auto c = laplacian_spectrum(k2, {1.0, 1.0}).eigenvalues;
  EXPECT_NEAR(c[1], 4.0 / 3.0, 1e-15);
  const auto l = normalized_laplacian(k2, {1.0, 0.0});
  EXPECT_DOUBLE_EQ(l(0, 1), -0.5);
  EXPECT_DOUBLE_EQ(l(0, 0), 0.5);
}

TEST(Eigendecompose, SmallExamples) {
  EXPECT_EQ(eigendecompose(Matrix::identity(3)).eigenvalues, (std::vector<double>{1, 1, 1}));
  Matrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const auto s = eigendecompose(swap).eigenvalues;
  EXPECT_NEAR(s[0], -1.0, 1e-15);
  EXPECT_NEAR(s[1], 1.0, 1e-15);
}

TEST(Eigendecompose, PathWithLoopHasSimpleZero) {
  const Graph p3(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const auto s = laplacian_spectrum(p3, {1.0, 0.0});
  EXPECT_EQ(spectrum_stats(s).zero_count, 1u);
}

TEST(Eigendecompose, VectorResidualsWithinContract) {
  const auto g = gen_erdos_renyi(30, 0.2, 4);
  const auto m = normalized_laplacian(g, {1.0, 0.0});
  const auto s = eigendecompose(m, true);
  const Matrix& u = *s.eigenvectors;
  EXPECT_LT(max_abs_diff(matmul_tn(u, u), Matrix::identity(30)), 1e-8);
  Matrix mu = matmul(m, u);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t k = 0; k < 30; ++k) mu(i, k) -= u(i, k) * s.eigenvalues[k];
  EXPECT_LT(mu.max_abs(), 1e-7 * m.max_abs());
  EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
}

TEST(SpectrumStats, CountsAndHistogram) {
  const auto a = spectrum_stats(values_only({0.0, 1.0}));
  EXPECT_EQ(a.lower_count, 1u);
  EXPECT_EQ(a.higher_count, 1u);
  EXPECT_EQ(a.zero_count, 1u);
  const auto b = spectrum_stats(values_only({0.0, 2.0 / 3.0}));
  EXPECT_EQ(b.lower_count, 2u);
  EXPECT_EQ(b.higher_count, 0u);

  const auto h = spectrum_stats(values_only({0.0, 0.05, 1.0, 2.0, 2.0 + 1e-12}), 1e-8, 4).histogram;
  EXPECT_EQ(h.edges, (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 0, 1, 2}));
  EXPECT_THROW(spectrum_stats(values_only({0.0}), 1e-8, 0), ValidationError);
}

TEST(SpectrumStats, OneComputedSlightlyBelowCountsAsHigh) {
  const auto st = spectrum_stats(values_only({1.0 - 1e-15}));
  EXPECT_EQ(st.higher_count, 1u);
}

TEST(SpectrumStats, TwoDisjointEdgesHaveTwoZeros) {
  const Graph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  EXPECT_EQ(spectrum_stats(laplacian_spectrum(g, {1.0, 0.0})).zero_count, 2u);
}

TEST(SpectrumStats, HistogramCsv) {
  std::ostringstream out;
  write_histogram_csv(out, spectrum_stats(values_only({0.1, 1.9}), 1e-8, 2).histogram);
  EXPECT_EQ(out.str(), "bin_lo,bin_hi,count\n0,1,1\n1,2,1\n");
}

TEST(Properties, SpectrumRangeTraceAndZeroMultiplicity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = gen_erdos_renyi(5 + seed % 20, 0.15 + 0.02 * static_cast<double>(seed % 10), seed);
    const RewireConfig cfg{1.0 + static_cast<double>(seed % 3), static_cast<double>(seed % 2)};
    const auto rw = rewire(g, cfg);
    const auto s = laplacian_spectrum(g, cfg);
    for (double l : s.eigenvalues) {
      EXPECT_GE(l, -1e-8);
      EXPECT_LE(l, 2.0 + 1e-8);
    }
    double want = static_cast<double>(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) want -= rw.loop_weight(i) / rw.degree(i);
    EXPECT_NEAR(std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0), want, 1e-8);
    EXPECT_EQ(spectrum_stats(s).zero_count, connected_components(g).count) << "seed " << seed;
  }
}

TEST(Properties, SpectrumIsPermutationInvariant) {
  const auto g = gen_erdos_renyi(18, 0.3, 9);
  std::vector<std::size_t> perm(18);
  std::iota(perm.begin(), perm.end(), 0);
  SplitMix64 rng(3);
  shuffle(perm, rng);
  const auto a = laplacian_spectrum(g, {1.0, 2.0}).eigenvalues;
  const auto b = laplacian_spectrum(permute(g, perm), {1.0, 2.0}).eigenvalues;
  EXPECT_LT(oracle::max_abs_diff(a, b), 1e-12);
}

TEST(Properties, SpectrumMatchesJacobiOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_erdos_renyi(14, 0.4, seed);
    const auto want = oracle::jacobi_eigenvalues(
        oracle::normalized_laplacian_of(oracle::rewired(g.adjacency(), 1.0, 0.0)));
    EXPECT_LT(oracle::max_abs_diff(laplacian_spectrum(g, {1.0, 0.0}).eigenvalues, want), 1e-12);
  }
}

TEST(GraphFilter, AllOnesIsIdentity) {
  const auto s = laplacian_spectrum(gen_erdos_renyi(12, 0.4, 1), {1.0, 0.0}, true);
  std::vector<double> x(12);
  for (std::size_t i = 0; i < 12; ++i) x[i] = std::sin(static_cast<double>(i));
  const auto y = graph_filter(s, x, std::vector<double>(12, 1.0));
  EXPECT_LT(oracle::max_abs_diff(x, y), 1e-12);
}

TEST(GraphFilter, GcnResponseOnK2PassesOnlyTheConstantMode) {
  const auto s = laplacian_spectrum(gen_complete(2), {1.0, 0.0}, true);
  const std::vector<double> e0{1.0, 0.0};
  const auto y = graph_filter(s, e0, gcn_filter_response(s));
  EXPECT_NEAR(y[0], 0.5, 1e-15);
  EXPECT_NEAR(y[1], 0.5, 1e-15);
}

TEST(GraphFilter, HighPassIndicatorRemovesConstantComponent) {
  const auto g = gen_erdos_renyi(15, 0.4, 2);
  ASSERT_TRUE(is_connected(g));
  const auto s = laplacian_spectrum(g, {1.0, 0.0}, true);
  std::vector<double> coeff(15);
  for (std::size_t k = 0; k < 15; ++k) coeff[k] = s.eigenvalues[k] >= 1.0 ? 1.0 : 0.0;
  // The λ = 0 eigenvector of L̃ is D̃^{1/2}·1; the filtered signal is orthogonal to it.
  const auto rw = rewire(g, {1.0, 0.0});
  std::vector<double> x(15, 1.0);
  const auto y = graph_filter(s, x, coeff);
  double dot = 0.0;
  for (std::size_t i = 0; i < 15; ++i) dot += std::sqrt(rw.degree(i)) * y[i];
  EXPECT_NEAR(dot, 0.0, 1e-10);
}

TEST(GraphFilter, GcnResponseEndpoints) {
  const auto g = gcn_filter_response(values_only({0.0, 1.0, 2.0}));
  EXPECT_EQ(g, (std::vector<double>{1.0, 0.0, -1.0}));
}

TEST(GraphFilter, ErrorsOnMissingVectorsOrBadLengths) {
  const auto s = laplacian_spectrum(gen_cycle(4), {1.0, 0.0}, false);
  const std::vector<double> x(4, 1.0);
  EXPECT_THROW(graph_filter(s, x, std::vector<double>(4, 1.0)), ValidationError);
  const auto sv = laplacian_spectrum(gen_cycle(4), {1.0, 0.0}, true);
  EXPECT_THROW(graph_filter(sv, x, std::vector<double>(3, 1.0)), ValidationError);
  EXPECT_THROW(graph_filter(sv, std::vector<double>(5, 1.0), std::vector<double>(4, 1.0)),
               ValidationError);
}
