#pragma once

#include <cmath>
#include <string>

#include "specwire/graph.hpp"

namespace specwire {

/// Self-loop multiplicity α and parallel-edge multiplicity γ. The rewired
/// adjacency is (γ+1)·A + α·I; (0,0) is the identity.
struct RewireConfig {
  double alpha = 0.0;
  double gamma = 0.0;

  void validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0)
      throw ValidationError("self-loop count alpha must be >= 0, got " + std::to_string(alpha));
    if (!std::isfinite(gamma) || gamma < 0.0)
      throw ValidationError("parallel-edge count gamma must be >= 0, got " +
                            std::to_string(gamma));
  }

  bool operator==(const RewireConfig&) const = default;
};

/// Sweep modes. Self-loop step k is A + kI; parallel-edge step k is kA + I.
enum class RewireMode { self_loop, parallel_edge };

inline const char* to_string(RewireMode m) noexcept {
  return m == RewireMode::self_loop ? "self_loop" : "parallel_edge";
}

inline RewireMode rewire_mode_from_string(const std::string& s) {
  if (s == "self_loop" || s == "self-loop" || s == "alpha") return RewireMode::self_loop;
  if (s == "parallel_edge" || s == "parallel-edge" || s == "gamma")
    return RewireMode::parallel_edge;
  throw ValidationError("unknown rewire mode '" + s + "'");
}

/// The configuration a mode uses for a given multiplicity: (α=p, γ=0) for
/// self-loops, (α=1, γ=p) for parallel edges (one self-loop per node, as in
/// Ã_γ = (γ+1)A + I).
inline RewireConfig config_for(RewireMode mode, double param) {
  return mode == RewireMode::self_loop ? RewireConfig{param, 0.0} : RewireConfig{1.0, param};
}

/// Ã_α = A + αI: every node gains α of self-loop mass (and α of degree).
inline Graph add_self_loops(const Graph& g, double alpha) {
  RewireConfig{alpha, 0.0}.validate();
  std::vector<double> loops = g.loop_weights();
  for (double& w : loops) w += alpha;
  return Graph(g.n(), g.edges(), std::move(loops));
}

/// A_γ = (γ+1)A: off-diagonal weights scale, loop weights do not.
inline Graph add_parallel_edges(const Graph& g, double gamma) {
  RewireConfig{0.0, gamma}.validate();
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.weight *= (gamma + 1.0);
  return Graph(g.n(), std::move(edges), g.loop_weights());
}

/// (γ+1)A + αI, i.e. add_self_loops(add_parallel_edges(g, γ), α).
inline Graph rewire(const Graph& g, const RewireConfig& cfg) {
  cfg.validate();
  return add_self_loops(add_parallel_edges(g, cfg.gamma), cfg.alpha);
}

/// Unnormalized Laplacian L = D - Ā. Loop mass appears in both D and Ā and
/// cancels on the diagonal.
inline Matrix laplacian(const Graph& g) {
  Matrix l(g.n(), g.n());
  for (const auto& e : g.edges()) {
    l(e.u, e.v) = -e.weight;
    l(e.v, e.u) = -e.weight;
  }
  for (std::size_t i = 0; i < g.n(); ++i) l(i, i) = g.degree(i) - g.loop_weight(i);
  return l;
}

}  // namespace specwire
