// Rewire a small graph, look at its spectrum, then run both GCN trend sweeps
// on a heterophilic planted partition.

#include <iostream>

#include "specwire/specwire.hpp"

int main() {
  using namespace specwire;

  const Graph g = gen_cycle(6);
  for (double alpha : {1.0, 2.0, 4.0}) {
    const auto s = laplacian_spectrum(g, {alpha, 0.0});
    std::cout << "C6 alpha=" << alpha << " lambda_max=" << s.eigenvalues.back() << '\n';
  }

  const auto lg = gen_planted_partition(60, 2, 0.05, 0.4, 1);
  Dataset data;
  data.graph = lg.graph;
  data.labels = lg.labels;
  data.num_classes = 2;
  data.features = synthetic_features(lg.labels, 2, 8, 0.5, 1);
  data.splits = make_splits(60, {}, 3, 1, lg.labels);

  SweepConfig sc;
  sc.hp.hidden = 16;
  sc.hp.epochs = 60;
  sc.n_splits = 3;
  const auto pair = run_both_sweeps(data, 4, sc);
  std::cout << emit(pair.category).dump(2) << '\n';
}
