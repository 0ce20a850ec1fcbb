#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <variant>
#include <vector>

#include "specwire/graph.hpp"
#include "specwire/rng.hpp"

namespace specwire {

// Every generator draws pair (i, j) from a counter-based stream keyed by the
// pair's lexicographic index, so output depends only on (parameters, seed)
// and any subset of pairs can be evaluated independently.

namespace detail {

inline constexpr std::uint64_t kErdosRenyiStream = 0x45522d6772617068ULL;
inline constexpr std::uint64_t kPlantedStream = 0x706c616e74656421ULL;

inline void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

inline std::uint64_t pair_index(std::uint64_t i, std::uint64_t j, std::uint64_t n) {
  // Row-major index of (i, j), i < j, in the strict upper triangle.
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace detail

/// G(n, p): each unordered pair independently with probability p.
inline Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw ValidationError("gen_erdos_renyi: n must be >= 1");
  detail::check_probability(p, "edge probability p");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double u = to_unit(hash_draw(seed, detail::kErdosRenyiStream, detail::pair_index(i, j, n)));
      if (u < p) edges.push_back({static_cast<node_id>(i), static_cast<node_id>(j), 1.0});
    }
  return Graph(n, std::move(edges));
}

/// Circulant graph: node i joins i ± o (mod n) for every offset o. Offsets
/// must be distinct and in [1, n/2]; o = n/2 contributes one neighbor.
inline Graph gen_regular_circulant(std::size_t n, const std::vector<std::size_t>& offsets) {
  if (n < 2) throw ValidationError("gen_regular_circulant: n must be >= 2");
  if (offsets.empty()) throw ValidationError("gen_regular_circulant: need at least one offset");
  std::set<std::size_t> seen;
  for (auto o : offsets) {
    if (o == 0 || 2 * o > n)
      throw ValidationError("gen_regular_circulant: offset " + std::to_string(o) +
                            " outside [1, n/2]");
    if (!seen.insert(o).second)
      throw ValidationError("gen_regular_circulant: duplicate offset " + std::to_string(o));
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (auto o : offsets) {
      const std::size_t j = (i + o) % n;
      pairs.insert({std::min(i, j), std::max(i, j)});
    }
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs)
    edges.push_back({static_cast<node_id>(a), static_cast<node_id>(b), 1.0});
  return Graph(n, std::move(edges));
}

inline Graph gen_cycle(std::size_t n) { return gen_regular_circulant(n, {1}); }

inline Graph gen_complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      edges.push_back({static_cast<node_id>(i), static_cast<node_id>(j), 1.0});
  return Graph(n, std::move(edges));
}

struct LabeledGraph {
  Graph graph;
  std::vector<int> labels;
};

/// Planted partition: node i is in class i mod k (balanced); intra-class
/// pairs appear with p_in, inter-class pairs with p_out. p_in < p_out gives
/// a heterophilic graph.
inline LabeledGraph gen_planted_partition(std::size_t n, std::size_t k_classes, double p_in,
                                          double p_out, std::uint64_t seed) {
  if (k_classes < 2) throw ValidationError("gen_planted_partition: need at least 2 classes");
  if (n < k_classes) throw ValidationError("gen_planted_partition: n must be >= k_classes");
  detail::check_probability(p_in, "p_in");
  detail::check_probability(p_out, "p_out");
  LabeledGraph out;
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.labels[i] = static_cast<int>(i % k_classes);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = out.labels[i] == out.labels[j] ? p_in : p_out;
      const double u = to_unit(hash_draw(seed, detail::kPlantedStream, detail::pair_index(i, j, n)));
      if (u < p) edges.push_back({static_cast<node_id>(i), static_cast<node_id>(j), 1.0});
    }
  out.graph = Graph(n, std::move(edges));
  return out;
}

/// Fraction of edges whose endpoints share a label (0 for an edgeless graph).
inline double edge_homophily(const Graph& g, std::span<const int> labels) {
  if (labels.size() != g.n()) throw ValidationError("edge_homophily: label count mismatch");
  if (g.edge_count() == 0) return 0.0;
  std::size_t same = 0;
  for (const auto& e : g.edges()) same += labels[e.u] == labels[e.v];
  return static_cast<double>(same) / static_cast<double>(g.edge_count());
}

struct ErdosRenyiSpec {
  std::size_t n = 10;
  double p = 0.5;
};
struct CirculantSpec {
  std::size_t n = 6;
  std::vector<std::size_t> offsets{1};
};
struct PlantedPartitionSpec {
  std::size_t n = 40;
  std::size_t k_classes = 2;
  double p_in = 0.05;
  double p_out = 0.9;
};

struct GenSpec {
  std::variant<ErdosRenyiSpec, CirculantSpec, PlantedPartitionSpec> kind;
  std::uint64_t seed = 0;
};

/// Labels are empty except for planted partitions.
inline LabeledGraph generate(const GenSpec& spec) {
  return std::visit(
      [&](const auto& k) -> LabeledGraph {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ErdosRenyiSpec>)
          return {gen_erdos_renyi(k.n, k.p, spec.seed), {}};
        else if constexpr (std::is_same_v<T, CirculantSpec>)
          return {gen_regular_circulant(k.n, k.offsets), {}};
        else
          return gen_planted_partition(k.n, k.k_classes, k.p_in, k.p_out, spec.seed);
      },
      spec.kind);
}

}  // namespace specwire
