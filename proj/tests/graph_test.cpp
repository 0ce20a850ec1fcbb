#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "specwire/graph.hpp"
#include "specwire/randgraph.hpp"

using namespace specwire;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

}  // namespace

TEST(EdgeList, ParsesWeightsCommentsAndDelimiters) {
  const auto g = parse("# a triangle\n0 1\n1,2,2.5\n0\t2 3\n\n");
  EXPECT_EQ(g.n(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_DOUBLE_EQ(g.degree(0), 4.0);
  EXPECT_DOUBLE_EQ(g.degree(1), 3.5);
  EXPECT_DOUBLE_EQ(g.degree(2), 5.5);
}

TEST(EdgeList, MergesDuplicatePairsBySumming) {
  const auto g = parse("0 1\n1 0 2\n");
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.edges()[0].weight, 3.0);
}

TEST(EdgeList, SelfLoopLineAddsLoopWeight) {
  const auto g = parse("0 1\n0 0\n0 0 2\n");
  EXPECT_DOUBLE_EQ(g.loop_weight(0), 3.0);
  EXPECT_DOUBLE_EQ(g.degree(0), 4.0);
  EXPECT_DOUBLE_EQ(g.off_diagonal_degree(0), 1.0);
}

TEST(EdgeList, NodeHintAddsIsolatedNodes) {
  const auto g = parse("# nodes 5\n0 1\n");
  EXPECT_EQ(g.n(), 5u);
  EXPECT_EQ(compute_metrics(g).isolated_count, 3u);
}

TEST(EdgeList, MalformedLineReportsLineNumber) {
  try {
    parse("0 1\n1 x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("0 1 2 3\n"), ParseError);
  EXPECT_THROW(parse("0\n"), ParseError);
}

TEST(EdgeList, NegativeIdIsValidationError) {
  EXPECT_THROW(parse("-1 2\n"), ValidationError);
}

TEST(EdgeList, WriteThenReadRoundTrips) {
  const auto g = Graph(4, {{0, 1, 1.0}, {2, 3, 0.5}}, {0.0, 2.0, 0.0, 0.0});
  std::ostringstream out;
  write_edge_list(out, g);
  EXPECT_EQ(parse(out.str()), g);
}

TEST(GraphConstruction, RejectsBadInput) {
  EXPECT_THROW(Graph(2, {{0, 2, 1.0}}), ValidationError);
  EXPECT_THROW(Graph(2, {{1, 1, 1.0}}), ValidationError);
  EXPECT_THROW(Graph(2, {{0, 1, -1.0}}), ValidationError);
  EXPECT_THROW(Graph(2, {{0, 1, 1.0}, {1, 0, 1.0}}), ValidationError);
  EXPECT_THROW(Graph(2, {}, {1.0}), ValidationError);
}

TEST(GraphConstruction, DropsZeroWeightEdges) {
  const Graph g(3, {{0, 1, 0.0}, {1, 2, 1.0}});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(compute_metrics(g).isolated_count, 1u);
}

TEST(Metrics, TriangleExample) {
  const auto m = compute_metrics(gen_complete(3));
  EXPECT_EQ(m.n, 3u);
  EXPECT_EQ(m.m, 3u);
  EXPECT_DOUBLE_EQ(m.density, 1.0);
  EXPECT_DOUBLE_EQ(m.avg_degree, 2.0);
  EXPECT_NEAR(m.log_density, -std::log(1.0 + 1e-12), 1e-15);
  EXPECT_EQ(m.isolated_count, 0u);
}

TEST(Metrics, DensityAndIsolatedPercentOnStar) {
  // star with center 0 and 4 leaves plus one isolated node
  const Graph g(6, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
  const auto m = compute_metrics(g);
  EXPECT_DOUBLE_EQ(m.density, 8.0 / 30.0);
  EXPECT_DOUBLE_EQ(m.avg_degree, 8.0 / 6.0);
  EXPECT_DOUBLE_EQ(m.isolated_pct, 100.0 / 6.0);
}

TEST(Metrics, SingleNodeHasZeroDensity) {
  const auto m = compute_metrics(Graph(1, {}));
  EXPECT_EQ(m.density, 0.0);
  EXPECT_EQ(m.isolated_count, 1u);
}

TEST(Metrics, DegreeSumIsTwiceEdgeWeight) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_erdos_renyi(25, 0.3, seed);
    double s = 0.0;
    for (double d : g.degrees()) s += d;
    EXPECT_DOUBLE_EQ(s, 2.0 * g.total_edge_weight());
  }
}

TEST(Components, CountsAndLabels) {
  const Graph g(5, {{0, 1, 1}, {3, 4, 1}});
  const auto c = connected_components(g);
  EXPECT_EQ(c.count, 3u);
  EXPECT_EQ(c.labels[0], c.labels[1]);
  EXPECT_NE(c.labels[0], c.labels[2]);
  EXPECT_FALSE(is_connected(g));
  EXPECT_TRUE(is_connected(gen_cycle(5)));
}

TEST(Permute, RelabelsEdgesAndLoops) {
  const Graph g(3, {{0, 1, 2.0}}, {0.0, 0.0, 1.0});
  const std::vector<std::size_t> perm{2, 0, 1};  // old i -> new perm[i]
  const auto h = permute(g, perm);
  ASSERT_EQ(h.edge_count(), 1u);
  EXPECT_EQ(h.edges()[0].u, 0u);
  EXPECT_EQ(h.edges()[0].v, 2u);
  EXPECT_DOUBLE_EQ(h.loop_weight(1), 1.0);
}
