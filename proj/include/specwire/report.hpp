#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "specwire/gcn.hpp"
#include "specwire/graph.hpp"
#include "specwire/spectral.hpp"
#include "specwire/sweep.hpp"
#include "specwire/trend.hpp"
#include "specwire/verify.hpp"

// JSON mapping for every report type. Top-level documents carry
// `"schema": kReportSchema`; nested objects do not.

namespace specwire {

inline constexpr int kReportSchema = 1;

using json = nlohmann::json;

inline json with_schema(json body) {
  json doc = {{"schema", kReportSchema}};
  doc.update(body);
  return doc;
}

inline void check_schema(const json& j) {
  if (!j.contains("schema") || j.at("schema") != kReportSchema)
    throw ValidationError("report JSON has missing or unsupported schema version");
}

// --- dense --------------------------------------------------------------

inline void to_json(json& j, const Matrix& m) {
  j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    j.push_back(std::vector<double>(r.begin(), r.end()));
  }
}

inline void from_json(const json& j, Matrix& m) {
  const auto rows = j.get<std::vector<std::vector<double>>>();
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  m = Matrix(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ValidationError("ragged matrix in JSON");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rows[i][k];
  }
}

inline void to_json(json& j, const RewireConfig& c) { j = {{"alpha", c.alpha}, {"gamma", c.gamma}}; }
inline void from_json(const json& j, RewireConfig& c) {
  c.alpha = j.at("alpha").get<double>();
  c.gamma = j.at("gamma").get<double>();
}

// --- graph --------------------------------------------------------------

inline void to_json(json& j, const GraphMetrics& m) {
  j = {{"n", m.n},
       {"m", m.m},
       {"isolated_count", m.isolated_count},
       {"isolated_pct", m.isolated_pct},
       {"density", m.density},
       {"log_density", m.log_density},
       {"avg_degree", m.avg_degree},
       {"log_avg_degree", m.log_avg_degree},
       {"epsilon", m.epsilon}};
}

inline void from_json(const json& j, GraphMetrics& m) {
  m.n = j.at("n").get<std::size_t>();
  m.m = j.at("m").get<std::size_t>();
  m.isolated_count = j.at("isolated_count").get<std::size_t>();
  m.isolated_pct = j.at("isolated_pct").get<double>();
  m.density = j.at("density").get<double>();
  m.log_density = j.at("log_density").get<double>();
  m.avg_degree = j.at("avg_degree").get<double>();
  m.log_avg_degree = j.at("log_avg_degree").get<double>();
  m.epsilon = j.at("epsilon").get<double>();
}

// --- spectrum -----------------------------------------------------------

inline void to_json(json& j, const Spectrum& s) {
  j = {{"source", to_string(s.source)},
       {"alpha", s.config.alpha},
       {"gamma", s.config.gamma},
       {"eigenvalues", s.eigenvalues}};
  if (s.eigenvectors) j["eigenvectors"] = *s.eigenvectors;
}

inline void from_json(const json& j, Spectrum& s) {
  s.source = operator_from_string(j.at("source").get<std::string>());
  s.config = {j.at("alpha").get<double>(), j.at("gamma").get<double>()};
  s.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  if (j.contains("eigenvectors"))
    s.eigenvectors = j.at("eigenvectors").get<Matrix>();
  else
    s.eigenvectors.reset();
}

inline void to_json(json& j, const SpectrumStats& st) {
  j = {{"lower_count", st.lower_count},
       {"higher_count", st.higher_count},
       {"zero_count", st.zero_count},
       {"tol", st.tol},
       {"histogram", {{"edges", st.histogram.edges}, {"counts", st.histogram.counts}}}};
}

// --- verification -------------------------------------------------------

inline void to_json(json& j, const BoundReport& r) {
  j = {{"mode", to_string(r.mode)},
       {"param", r.param},
       {"connected", r.connected},
       {"max_degree", r.max_degree},
       {"min_degree", r.min_degree},
       {"beta1", r.beta1},
       {"lambda_max_bound", r.lemma_bound},
       {"lambda_max", r.observed},
       {"slack", r.slack},
       {"lambda_max_holds", r.holds},
       {"delta1", r.delta1},
       {"delta1_bound", r.delta1_bound},
       {"delta1_holds", r.delta1_holds},
       {"deltan", r.deltan},
       {"deltan_bound", r.deltan_bound},
       {"deltan_holds", r.deltan_holds},
       {"deltan_max_degree_bound", r.deltan_max_degree_bound},
       {"deltan_max_degree_holds", r.deltan_max_degree_holds}};
}

inline void to_json(json& j, const RangeReport& r) {
  j = {{"mode", to_string(r.mode)},
       {"param", r.param},
       {"degree", r.degree},
       {"min_eigenvalue", r.min_eigenvalue},
       {"max_eigenvalue", r.max_eigenvalue},
       {"pass", r.pass}};
}

inline void to_json(json& j, const MonotonicityReport& r) {
  j = {{"mode", to_string(r.mode)},
       {"params", r.params},
       {"eigenvalues", r.eigenvalues},
       {"pass", r.pass},
       {"worst_violation", r.worst_violation}};
}

inline void to_json(json& j, const CorollaryReport& r) {
  j = {{"alpha", r.alpha},
       {"gamma", r.gamma},
       {"unnormalized_max_diff", r.unnormalized_max_diff},
       {"unnormalized_exact", r.unnormalized_exact},
       {"normalized_applicable", r.normalized_applicable},
       {"normalized_max_diff", r.normalized_max_diff},
       {"normalized_unchanged", r.normalized_unchanged},
       {"with_loops_max_diff", r.with_loops_max_diff},
       {"pass", r.pass}};
}

inline void to_json(json& j, const PerturbationEntry& e) {
  j = {{"index", e.index},       {"eigenvalue", e.eigenvalue}, {"simple", e.simple},
       {"f1_term", e.f1_term},   {"f2_term", e.f2_term},       {"predicted", e.predicted},
       {"actual", e.actual},     {"discrepancy", e.discrepancy}};
}

inline void to_json(json& j, const PerturbationReport& r) {
  j = {{"mode", to_string(r.mode)}, {"param", r.param}, {"entries", r.entries}};
}

inline void to_json(json& j, const DecayEntry& e) {
  j = {{"index", e.index},
       {"discrepancy", e.discrepancy},
       {"discrepancy_half", e.discrepancy_half},
       {"ratio", e.ratio},
       {"kind", to_string(e.kind)}};
}

inline void to_json(json& j, const DecayReport& r) {
  j = {{"mode", to_string(r.mode)}, {"param", r.param}, {"entries", r.entries}, {"pass", r.pass}};
}

// --- training and trends --------------------------------------------------

inline void to_json(json& j, const TrainResult& r) {
  j = {{"metric", to_string(r.metric)},
       {"train_loss", r.train_loss},
       {"valid_metric", r.valid_metric},
       {"best_epoch", r.best_epoch},
       {"best_valid", r.best_valid},
       {"test_metric", r.test_metric}};
}

inline void from_json(const json& j, TrainResult& r) {
  r.metric = metric_from_string(j.at("metric").get<std::string>());
  r.train_loss = j.at("train_loss").get<std::vector<double>>();
  r.valid_metric = j.at("valid_metric").get<std::vector<double>>();
  r.best_epoch = j.at("best_epoch").get<std::size_t>();
  r.best_valid = j.at("best_valid").get<double>();
  r.test_metric = j.at("test_metric").get<double>();
}

inline void to_json(json& j, const TrendPoint& p) {
  j = {{"k", p.k}, {"mean", p.mean}, {"std", p.std}, {"values", p.values}};
}

inline void from_json(const json& j, TrendPoint& p) {
  p.k = j.at("k").get<double>();
  p.mean = j.at("mean").get<double>();
  p.std = j.at("std").get<double>();
  p.values = j.at("values").get<std::vector<double>>();
}

inline void to_json(json& j, const TrendReport& r) {
  j = {{"mode", to_string(r.mode)}, {"steps", r.steps},         {"slope", r.slope},
       {"spearman", r.spearman},    {"slope_tol", r.slope_tol}, {"label", to_string(r.label)}};
}

inline void from_json(const json& j, TrendReport& r) {
  r.mode = rewire_mode_from_string(j.at("mode").get<std::string>());
  r.steps = j.at("steps").get<std::vector<TrendPoint>>();
  r.slope = j.at("slope").get<double>();
  r.spearman = j.at("spearman").get<double>();
  r.slope_tol = j.at("slope_tol").get<double>();
  r.label = trend_from_string(j.at("label").get<std::string>());
}

inline void to_json(json& j, const CategoryReport& r) {
  j = {{"trend_self_loop", to_string(r.self_loop)},
       {"trend_parallel_edge", to_string(r.parallel_edge)},
       {"category", to_string(r.category)},
       {"interpretation", r.interpretation}};
}

inline void from_json(const json& j, CategoryReport& r) {
  r.self_loop = trend_from_string(j.at("trend_self_loop").get<std::string>());
  r.parallel_edge = trend_from_string(j.at("trend_parallel_edge").get<std::string>());
  r.category = category_from_string(j.at("category").get<std::string>());
  r.interpretation = j.at("interpretation").get<std::string>();
}

inline void to_json(json& j, const GridReport& g) {
  j = {{"alphas", g.alphas}, {"gammas", g.gammas}, {"mean", g.mean}, {"std", g.std}};
}

inline void from_json(const json& j, GridReport& g) {
  g.alphas = j.at("alphas").get<std::vector<double>>();
  g.gammas = j.at("gammas").get<std::vector<double>>();
  g.mean = j.at("mean").get<Matrix>();
  g.std = j.at("std").get<Matrix>();
}

inline void to_json(json& j, const BenchTask& t) {
  j = {{"name", t.name}, {"outcome", to_string(t.outcome)}, {"wall_seconds", t.wall_seconds}};
}

inline void from_json(const json& j, BenchTask& t) {
  t.name = j.at("name").get<std::string>();
  t.outcome = bench_outcome_from_string(j.at("outcome").get<std::string>());
  t.wall_seconds = j.at("wall_seconds").get<double>();
}

inline void to_json(json& j, const BenchReport& r) {
  j = {{"n", r.n}, {"m", r.m}, {"alpha", r.config.alpha}, {"gamma", r.config.gamma},
       {"tasks", r.tasks}};
}

inline void from_json(const json& j, BenchReport& r) {
  r.n = j.at("n").get<std::size_t>();
  r.m = j.at("m").get<std::size_t>();
  r.config = {j.at("alpha").get<double>(), j.at("gamma").get<double>()};
  r.tasks = j.at("tasks").get<std::vector<BenchTask>>();
}

// --- documents ------------------------------------------------------------

/// Serializes a report as a schema-tagged document.
template <class T>
json emit(const T& report) {
  return with_schema(json(report));
}

/// Inverse of emit().
template <class T>
T parse(const json& doc) {
  check_schema(doc);
  json body = doc;
  body.erase("schema");
  try {
    return body.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed report JSON: ") + e.what());
  }
}

/// Drops every key ending in `_seconds`, at any depth, so runs can be
/// compared byte for byte.
inline json strip_timing(json j) {
  if (j.is_object()) {
    json out = json::object();
    for (auto& [k, v] : j.items()) {
      if (k.size() >= 8 && k.compare(k.size() - 8, 8, "_seconds") == 0) continue;
      out[k] = strip_timing(v);
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (auto& v : j) out.push_back(strip_timing(v));
    return out;
  }
  return j;
}

}  // namespace specwire
