#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "specwire/graph.hpp"
#include "specwire/report.hpp"

using specwire::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SPECWIRE_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(SPECWIRE_SAMPLES) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::path(testing::TempDir()) / ("specwire_cli_" + name)).string();
}

}  // namespace

TEST(Cli, StatsOnTriangle) {
  const auto r = run("stats --graph " + sample("triangle.txt"));
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("n"), 3);
  EXPECT_EQ(j.at("m"), 3);
  EXPECT_EQ(j.at("components"), 1);
}

TEST(Cli, SpectrumJsonAndHistogramCsv) {
  const auto r = run("spectrum --graph " + sample("triangle.txt") + " --alpha 1");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  ASSERT_EQ(j.at("eigenvalues").size(), 3u);
  // K3 with one loop per node: L̃ = I - (A + I)/3, eigenvalues {0, 1, 1}.
  EXPECT_NEAR(j.at("eigenvalues")[0].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(j.at("eigenvalues")[2].get<double>(), 1.0, 1e-12);

  const auto csv = run("--format csv spectrum --graph " + sample("c6.txt") + " --bins 4");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "bin_lo,bin_hi,count");
}

TEST(Cli, BadInputsExitTwo) {
  EXPECT_EQ(run("stats --graph /nonexistent/graph.txt").code, 2);
  EXPECT_EQ(run("--format xml stats --graph " + sample("triangle.txt")).code, 2);
  EXPECT_EQ(run("rewire --graph " + sample("triangle.txt") + " --alpha -1").code, 2);
  EXPECT_EQ(run("nosuchcommand").code, 2);

  const auto bad = temp_path("bad_edges.txt");
  std::ofstream(bad) << "0 1\nzero one\n";
  EXPECT_EQ(run("stats --graph " + bad).code, 2);
}

TEST(Cli, RandomErIsSeedDeterministic) {
  const auto a = run("--seed 11 random er --n 20 --p 0.3");
  const auto b = run("--seed 11 random er --n 20 --p 0.3");
  const auto c = run("--seed 12 random er --n 20 --p 0.3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, RewireCsvLoadsBackAsTheRewiredGraph) {
  const auto path = temp_path("rewired.csv");
  ASSERT_EQ(run("--format csv --out " + path + " rewire --graph " + sample("c6.txt") +
                " --alpha 2 --gamma 1")
                .code,
            0);
  std::ifstream in(path);
  const auto g = specwire::load_edge_list(in);
  EXPECT_EQ(g.n(), 6u);
  EXPECT_EQ(g.edge_count(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_DOUBLE_EQ(g.loop_weight(i), 2.0);
    EXPECT_DOUBLE_EQ(g.degree(i), 6.0);
  }
}

TEST(Cli, VerifyReportsPass) {
  const auto r = run("verify range --graph " + sample("c6.txt") + " --from 1 --to 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).at("pass").get<bool>());
}

TEST(Cli, SweepOnPlantedPartition) {
  const auto graph = temp_path("planted.txt");
  const auto labels = temp_path("planted_labels.txt");
  ASSERT_EQ(run("--seed 3 --format csv --out " + graph +
                " random planted --n 40 --k 2 --p-in 0.05 --p-out 0.4 --labels-out " + labels)
                .code,
            0);
  const std::string args = "--seed 5 sweep --graph " + graph + " --labels " + labels +
                           " --config " + sample("small_config.json") + " --k-max 3 --signal 0.5";
  const auto a = run(args);
  ASSERT_EQ(a.code, 0);
  const auto j = json::parse(a.out);
  EXPECT_EQ(j.at("self_loop").at("steps").size(), 3u);
  EXPECT_EQ(j.at("n_splits"), 3);
  EXPECT_TRUE(j.at("category").contains("category"));
  EXPECT_EQ(run(args).out, a.out);
  EXPECT_EQ(run("sweep --graph " + graph + " --labels " + labels + " --k-max 2").code, 2);
}
