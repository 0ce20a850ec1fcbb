#include <gtest/gtest.h>

#include <sstream>

#include "specwire/randgraph.hpp"
#include "specwire/verify.hpp"

using namespace specwire;

TEST(ErdosRenyi, EdgeCountWithinBinomialBand) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = gen_erdos_renyi(10, 0.5, seed).edge_count();
    EXPECT_GE(m, 5u);
    EXPECT_LE(m, 40u);
  }
}

TEST(ErdosRenyi, MeanEdgeCountNearExpectation) {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 400; ++seed)
    total += static_cast<double>(gen_erdos_renyi(10, 0.5, seed).edge_count());
  // 400 draws of Bin(45, 1/2): sd of the mean is sqrt(45/4/400) ≈ 0.17.
  EXPECT_NEAR(total / 400.0, 22.5, 1.0);
}

TEST(ErdosRenyi, ExtremeProbabilities) {
  EXPECT_EQ(gen_erdos_renyi(4, 1.0, 3), gen_complete(4));
  EXPECT_EQ(gen_erdos_renyi(4, 0.0, 3).edge_count(), 0u);
  EXPECT_THROW(gen_erdos_renyi(4, 1.5, 0), ValidationError);
  EXPECT_THROW(gen_erdos_renyi(0, 0.5, 0), ValidationError);
}

TEST(ErdosRenyi, SameSeedSameBytes) {
  std::ostringstream a, b;
  write_edge_list(a, gen_erdos_renyi(30, 0.2, 42));
  write_edge_list(b, gen_erdos_renyi(30, 0.2, 42));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(gen_erdos_renyi(30, 0.2, 42), gen_erdos_renyi(30, 0.2, 43));
}

TEST(ErdosRenyi, PairInclusionIsAFunctionOfSeedAndPairIndex) {
  const auto g = gen_erdos_renyi(6, 0.5, 0);
  for (node_id i = 0; i < 6; ++i)
    for (node_id j = i + 1; j < 6; ++j) {
      const double u = to_unit(hash_draw(0, detail::kErdosRenyiStream, detail::pair_index(i, j, 6)));
      bool present = false;
      for (const auto& e : g.edges()) present = present || (e.u == i && e.v == j);
      EXPECT_EQ(present, u < 0.5);
    }
  EXPECT_EQ(detail::pair_index(0, 1, 6), 0u);
  EXPECT_EQ(detail::pair_index(4, 5, 6), 14u);
}

TEST(Circulant, Examples) {
  const auto c6 = gen_regular_circulant(6, {1});
  EXPECT_EQ(regular_degree(c6), 2.0);
  EXPECT_EQ(c6.edge_count(), 6u);
  EXPECT_EQ(regular_degree(gen_regular_circulant(6, {1, 2})), 4.0);
  EXPECT_EQ(gen_regular_circulant(3, {1}), gen_complete(3));
  EXPECT_EQ(regular_degree(gen_regular_circulant(8, {4})), 1.0);
}

TEST(Circulant, AlwaysRegular) {
  for (std::size_t n = 3; n < 14; ++n)
    for (std::size_t o = 1; 2 * o <= n; ++o)
      EXPECT_TRUE(regular_degree(gen_regular_circulant(n, {o})).has_value()) << n << " " << o;
}

TEST(Circulant, RejectsBadOffsets) {
  EXPECT_THROW(gen_regular_circulant(6, {0}), ValidationError);
  EXPECT_THROW(gen_regular_circulant(6, {4}), ValidationError);
  EXPECT_THROW(gen_regular_circulant(6, {1, 1}), ValidationError);
  EXPECT_THROW(gen_regular_circulant(6, {}), ValidationError);
}

TEST(PlantedPartition, HomophilyFollowsProbabilities) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto homo = gen_planted_partition(40, 2, 0.9, 0.05, seed);
    EXPECT_GT(edge_homophily(homo.graph, homo.labels), 0.7);
    const auto het = gen_planted_partition(40, 2, 0.05, 0.9, seed);
    EXPECT_LT(edge_homophily(het.graph, het.labels), 0.3);
  }
}

TEST(PlantedPartition, DeterministicTwoEdges) {
  const auto lg = gen_planted_partition(4, 2, 1.0, 0.0, 5);
  EXPECT_EQ(lg.labels, (std::vector<int>{0, 1, 0, 1}));
  EXPECT_EQ(lg.graph, Graph(4, {{0, 2, 1.0}, {1, 3, 1.0}}));
}

TEST(Generate, DispatchesOnSpec) {
  EXPECT_EQ(generate({ErdosRenyiSpec{8, 0.3}, 4}).graph, gen_erdos_renyi(8, 0.3, 4));
  EXPECT_EQ(generate({CirculantSpec{6, {1}}, 0}).graph, gen_cycle(6));
  const auto pp = generate({PlantedPartitionSpec{10, 2, 0.5, 0.1}, 2});
  EXPECT_EQ(pp.labels.size(), 10u);
}
