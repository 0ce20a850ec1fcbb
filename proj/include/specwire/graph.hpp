#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specwire/dense.hpp"
#include "specwire/error.hpp"

namespace specwire {

using node_id = std::uint32_t;

struct Edge {
  node_id u;
  node_id v;
  double weight;

  bool operator==(const Edge&) const = default;
};

/// Weighted undirected graph with per-node self-loop mass.
///
/// Edges are stored once with u < v and read symmetrically. Self-loops are
/// never in the edge list; they live in `loop_weight`, which sits on the
/// diagonal of the adjacency matrix and counts once toward the degree, so
/// that A + αI and D + αI come out of the same representation. Zero-weight
/// edges are dropped on construction. Immutable after construction.
class Graph {
 public:
  struct Neighbor {
    node_id node;
    double weight;
  };

  Graph() = default;

  /// Edges may be given in either orientation; (u,v) and (v,u) are the same
  /// pair and must not both appear.
  Graph(std::size_t n, std::vector<Edge> edges, std::vector<double> loop_weight = {})
      : n_(n), loop_weight_(std::move(loop_weight)) {
    if (n_ > std::numeric_limits<node_id>::max())
      throw ValidationError("graph too large for 32-bit node ids");
    if (loop_weight_.empty()) loop_weight_.assign(n_, 0.0);
    if (loop_weight_.size() != n_)
      throw ValidationError("loop_weight has " + std::to_string(loop_weight_.size()) +
                            " entries, expected " + std::to_string(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      if (!std::isfinite(loop_weight_[i]) || loop_weight_[i] < 0.0)
        throw ValidationError("loop weight of node " + std::to_string(i) +
                              " must be finite and nonnegative");
    }

    edges_.reserve(edges.size());
    for (Edge e : edges) {
      if (e.u >= n_ || e.v >= n_)
        throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              ") out of range for n=" + std::to_string(n_));
      if (e.u == e.v)
        throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              ") is a self-loop; use loop_weight");
      if (!std::isfinite(e.weight) || e.weight < 0.0)
        throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              ") weight must be finite and nonnegative");
      if (e.weight == 0.0) continue;
      if (e.u > e.v) std::swap(e.u, e.v);
      edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t k = 1; k < edges_.size(); ++k) {
      if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v)
        throw ValidationError("duplicate edge (" + std::to_string(edges_[k].u) + "," +
                              std::to_string(edges_[k].v) + ")");
    }
    build_csr();
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<double>& loop_weights() const noexcept { return loop_weight_; }
  double loop_weight(std::size_t i) const { return loop_weight_.at(i); }

  std::span<const Neighbor> neighbors(std::size_t i) const {
    return {adj_.data() + offsets_.at(i), offsets_.at(i + 1) - offsets_.at(i)};
  }

  /// Σ_j w(i,j) + loop_weight(i).
  double degree(std::size_t i) const { return off_diagonal_degree(i) + loop_weight_.at(i); }

  /// Σ_j w(i,j), i.e. the degree with self-loops removed.
  double off_diagonal_degree(std::size_t i) const {
    double s = 0.0;
    for (const auto& nb : neighbors(i)) s += nb.weight;
    return s;
  }

  std::vector<double> degrees() const {
    std::vector<double> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = degree(i);
    return d;
  }

  double total_edge_weight() const noexcept {
    double s = 0.0;
    for (const auto& e : edges_) s += e.weight;
    return s;
  }

  bool has_loops() const noexcept {
    return std::any_of(loop_weight_.begin(), loop_weight_.end(),
                       [](double w) { return w != 0.0; });
  }

  /// Dense symmetric adjacency with loop weights on the diagonal.
  Matrix adjacency() const {
    Matrix a(n_, n_);
    for (const auto& e : edges_) {
      a(e.u, e.v) = e.weight;
      a(e.v, e.u) = e.weight;
    }
    for (std::size_t i = 0; i < n_; ++i) a(i, i) = loop_weight_[i];
    return a;
  }

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && edges_ == o.edges_ && loop_weight_ == o.loop_weight_;
  }

 private:
  void build_csr() {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adj_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      adj_[cursor[e.u]++] = {e.v, e.weight};
      adj_[cursor[e.v]++] = {e.u, e.weight};
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> loop_weight_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adj_;
};

// ---------------------------------------------------------------------------
// Edge-list text format
//
//   u v [w]     one edge per line, integer ids >= 0, optional weight (default 1)
//   u u [w]     adds w to the self-loop weight of u
//   # ...       comment; "# nodes N" also acts as a node-count hint
//
// Repeated pairs merge by summing weights.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<long long> parse_int(std::string_view tok) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_double(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

/// Shortest round-trip decimal form; identical bytes on every platform.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Reads "u v [w]" rows; commas also separate fields. Repeated pairs add
/// their weights, "# nodes N" fixes n when the last nodes are isolated.
inline Graph load_edge_list(std::istream& in, std::optional<std::size_t> n_hint = std::nullopt) {
  std::map<std::pair<node_id, node_id>, double> merged;
  std::map<node_id, double> loops;
  long long max_id = -1;
  std::size_t hint = n_hint.value_or(0);

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      auto comment = detail::split_ws(body.substr(hash + 1));
      if (comment.size() == 2 && comment[0] == "nodes") {
        if (auto v = detail::parse_int(comment[1]); v && *v >= 0)
          hint = std::max(hint, static_cast<std::size_t>(*v));
      }
      body = body.substr(0, hash);
    }
    body = detail::trim(body);
    if (body.empty()) continue;

    const auto tokens = detail::split_ws(body);
    if (tokens.size() != 2 && tokens.size() != 3)
      throw ParseError(lineno, "expected \"u v\" or \"u v w\", got " +
                                   std::to_string(tokens.size()) + " fields");
    const auto u = detail::parse_int(tokens[0]);
    const auto v = detail::parse_int(tokens[1]);
    if (!u || !v) throw ParseError(lineno, "node ids must be integers");
    if (*u < 0 || *v < 0)
      throw ValidationError("line " + std::to_string(lineno) + ": negative node id");
    if (*u > std::numeric_limits<node_id>::max() - 1 || *v > std::numeric_limits<node_id>::max() - 1)
      throw ValidationError("line " + std::to_string(lineno) + ": node id too large");
    double w = 1.0;
    if (tokens.size() == 3) {
      const auto pw = detail::parse_double(tokens[2]);
      if (!pw) throw ParseError(lineno, "weight is not a number");
      if (!std::isfinite(*pw) || *pw < 0.0)
        throw ValidationError("line " + std::to_string(lineno) +
                              ": weight must be finite and nonnegative");
      w = *pw;
    }
    max_id = std::max({max_id, *u, *v});
    const auto a = static_cast<node_id>(std::min(*u, *v));
    const auto b = static_cast<node_id>(std::max(*u, *v));
    if (a == b)
      loops[a] += w;
    else
      merged[{a, b}] += w;
  }

  const std::size_t n = std::max(static_cast<std::size_t>(max_id + 1), hint);
  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (const auto& [key, w] : merged) edges.push_back({key.first, key.second, w});
  std::vector<double> loop_weight(n, 0.0);
  for (const auto& [i, w] : loops) loop_weight[i] = w;
  return Graph(n, std::move(edges), std::move(loop_weight));
}

/// Writes the edge-list format back out; load_edge_list(write_edge_list(g)) == g.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.n() << '\n';
  for (const auto& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << detail::format_double(e.weight) << '\n';
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (g.loop_weight(i) != 0.0)
      out << i << ' ' << i << ' ' << detail::format_double(g.loop_weight(i)) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Structural statistics
// ---------------------------------------------------------------------------

inline constexpr double kDefaultLogEpsilon = 1e-12;

struct GraphMetrics {
  std::size_t n = 0;
  std::size_t m = 0;  // undirected edges, self-loops excluded
  std::size_t isolated_count = 0;
  double isolated_pct = 0.0;
  double density = 0.0;
  double log_density = 0.0;
  double avg_degree = 0.0;
  double log_avg_degree = 0.0;
  double epsilon = kDefaultLogEpsilon;
};

/// density = 2m / (n(n-1)) (0 when n == 1), avg_degree = 2m / n, and the
/// log-scaled variants -ln(x + ε). Isolated means zero degree including loops.
inline GraphMetrics compute_metrics(const Graph& g, double epsilon = kDefaultLogEpsilon) {
  if (g.n() < 1) throw ValidationError("compute_metrics: graph has no nodes");
  if (!(epsilon > 0.0)) throw ValidationError("compute_metrics: epsilon must be > 0");
  GraphMetrics m;
  m.n = g.n();
  m.m = g.edge_count();
  m.epsilon = epsilon;
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (g.neighbors(i).empty() && g.loop_weight(i) == 0.0) ++m.isolated_count;
  }
  const double n = static_cast<double>(m.n);
  const double two_m = 2.0 * static_cast<double>(m.m);
  m.isolated_pct = 100.0 * static_cast<double>(m.isolated_count) / n;
  m.density = m.n > 1 ? two_m / (n * (n - 1.0)) : 0.0;
  m.avg_degree = two_m / n;
  m.log_density = -std::log(m.density + epsilon);
  m.log_avg_degree = -std::log(m.avg_degree + epsilon);
  return m;
}

struct Components {
  std::vector<std::size_t> labels;  // in [0, count), numbered by first appearance
  std::size_t count = 0;
};

/// Connectivity through edges only; loop weights play no role.
inline Components connected_components(const Graph& g) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  Components c;
  c.labels.assign(g.n(), unset);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < g.n(); ++s) {
    if (c.labels[s] != unset) continue;
    c.labels[s] = c.count;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(u)) {
        if (c.labels[nb.node] == unset) {
          c.labels[nb.node] = c.count;
          stack.push_back(nb.node);
        }
      }
    }
    ++c.count;
  }
  return c;
}

inline bool is_connected(const Graph& g) { return g.n() > 0 && connected_components(g).count == 1; }

/// Relabels node i as perm[i].
inline Graph permute(const Graph& g, std::span<const std::size_t> perm) {
  if (perm.size() != g.n()) throw ValidationError("permute: permutation length mismatch");
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges())
    edges.push_back({static_cast<node_id>(perm[e.u]), static_cast<node_id>(perm[e.v]), e.weight});
  std::vector<double> loops(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) loops[perm[i]] = g.loop_weight(i);
  return Graph(g.n(), std::move(edges), std::move(loops));
}

}  // namespace specwire
