#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "specwire/randgraph.hpp"
#include "specwire/report.hpp"
#include "specwire/sweep.hpp"

using namespace specwire;

namespace {

Dataset heterophilic(std::uint64_t seed, std::size_t n_splits = 2) {
  const auto lg = gen_planted_partition(40, 2, 0.05, 0.5, seed);
  Dataset d;
  d.graph = lg.graph;
  d.labels = lg.labels;
  d.num_classes = 2;
  d.features = synthetic_features(lg.labels, 2, 8, 0.5, seed);
  d.splits = make_splits(40, {}, n_splits, seed, lg.labels);
  return d;
}

SweepConfig quick(std::size_t n_splits = 2, std::size_t threads = 1) {
  SweepConfig sc;
  sc.hp.epochs = 30;
  sc.hp.hidden = 16;
  sc.seeds = {7, 8};
  sc.n_splits = n_splits;
  sc.threads = threads;
  return sc;
}

}  // namespace

TEST(SweepConfig, StepMapping) {
  EXPECT_EQ(sweep_config(RewireMode::self_loop, 3), (RewireConfig{3.0, 0.0}));
  EXPECT_EQ(sweep_config(RewireMode::parallel_edge, 1), (RewireConfig{1.0, 0.0}));
  EXPECT_EQ(sweep_config(RewireMode::parallel_edge, 4), (RewireConfig{1.0, 3.0}));
  EXPECT_THROW(sweep_config(RewireMode::self_loop, 0), ValidationError);
}

TEST(RunSweep, BothModesGiveReportsAndCategory) {
  const auto d = heterophilic(1);
  const auto p = run_both_sweeps(d, 4, quick());
  EXPECT_EQ(p.self_loop.steps.size(), 4u);
  EXPECT_EQ(p.parallel_edge.steps.size(), 4u);
  EXPECT_EQ(p.self_loop.mode, RewireMode::self_loop);
  EXPECT_EQ(p.category.category, assign_category(p.self_loop.label, p.parallel_edge.label).category);
  for (const auto& s : p.self_loop.steps) {
    EXPECT_EQ(s.values.size(), 2u);
    EXPECT_GE(s.mean, 0.0);
    EXPECT_LE(s.mean, 1.0);
  }
}

TEST(RunSweep, KMaxBelowThreeIsRejected) {
  EXPECT_THROW(run_sweep(heterophilic(1), RewireMode::self_loop, 2, quick()), ValidationError);
}

TEST(RunSweep, TooManySplitsRequested) {
  EXPECT_THROW(run_sweep(heterophilic(1, 1), RewireMode::self_loop, 3, quick(2)), ValidationError);
}

TEST(RunSweep, DeterministicAndSchedulingIndependent) {
  const auto d = heterophilic(2);
  const auto a = run_sweep(d, RewireMode::parallel_edge, 3, quick(2, 1));
  const auto b = run_sweep(d, RewireMode::parallel_edge, 3, quick(2, 1));
  const auto c = run_sweep(d, RewireMode::parallel_edge, 3, quick(2, 3));
  EXPECT_EQ(emit(a).dump(), emit(b).dump());
  EXPECT_EQ(emit(a).dump(), emit(c).dump());
}

TEST(RunGrid, ShapeAndCsv) {
  const auto d = heterophilic(3, 1);
  auto sc = quick(1);
  sc.hp.epochs = 5;
  const auto g = run_grid(d, 5, 5, sc);
  EXPECT_EQ(g.mean.rows(), 5u);
  EXPECT_EQ(g.mean.cols(), 5u);
  EXPECT_EQ(g.alphas, (std::vector<double>{1, 2, 3, 4, 5}));
  EXPECT_EQ(g.gammas, (std::vector<double>{0, 1, 2, 3, 4}));
  std::ostringstream out;
  write_grid_csv(out, g);
  const auto text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 26);
}

TEST(RunGrid, CornersMatchSweepEndpoints) {
  const auto d = heterophilic(4);
  const auto sc = quick();
  const auto g = run_grid(d, 3, 3, sc);
  const auto sl = run_sweep(d, RewireMode::self_loop, 3, sc);
  const auto pe = run_sweep(d, RewireMode::parallel_edge, 3, sc);
  EXPECT_EQ(g.mean(0, 0), sl.steps[0].mean);
  EXPECT_EQ(g.mean(0, 0), pe.steps[0].mean);
  EXPECT_EQ(g.mean(2, 0), sl.steps[2].mean);
  EXPECT_EQ(g.mean(0, 2), pe.steps[2].mean);
}

TEST(RunGrid, OneByOneIsASingleRun) {
  const auto d = heterophilic(5, 1);
  const auto sc = quick(1);
  const auto g = run_grid(d, 1, 1, sc);
  const auto r = train(d, {1.0, 0.0}, sc.hp, split_seeds(sc.seeds, 0), 0);
  EXPECT_EQ(g.mean(0, 0), r.test_metric);
  EXPECT_THROW(run_grid(d, 0, 1, sc), ValidationError);
}

TEST(RunBench, K3BothTasksOk) {
  const auto r = run_bench(gen_complete(3), {1.0, 0.0});
  ASSERT_EQ(r.tasks.size(), 2u);
  for (const auto& t : r.tasks) {
    EXPECT_EQ(t.outcome, BenchOutcome::ok);
    EXPECT_GT(t.wall_seconds, 0.0);
  }
}

TEST(RunBench, AboveCapRecordsOutcomeAndStillSweeps) {
  BenchConfig bc;
  bc.cap = 10;
  const auto r = run_bench(gen_cycle(20), {1.0, 0.0}, bc);
  EXPECT_EQ(r.tasks[0].outcome, BenchOutcome::size_cap_exceeded);
  EXPECT_EQ(r.tasks[1].outcome, BenchOutcome::ok);
  const auto again = run_bench(gen_cycle(20), {1.0, 0.0}, bc);
  EXPECT_EQ(strip_timing(emit(r)), strip_timing(emit(again)));
}
