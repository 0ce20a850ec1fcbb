#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "specwire/dense.hpp"
#include "specwire/error.hpp"
#include "specwire/gcn.hpp"
#include "specwire/graph.hpp"

namespace specwire {

/// One row of comma-separated reals per node. Blank lines and `#` comments
/// are skipped; every row must have the same width.
inline Matrix load_features_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      const auto tok = detail::trim(body.substr(start, comma == std::string_view::npos
                                                           ? std::string_view::npos
                                                           : comma - start));
      const auto v = detail::parse_double(tok);
      if (!v || !std::isfinite(*v))
        throw ParseError(lineno, "bad feature value '" + std::string(tok) + "'");
      row.push_back(*v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(lineno, "expected " + std::to_string(rows.front().size()) +
                                   " features, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("features file has no rows");
  Matrix x(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) x(i, j) = rows[i][j];
  return x;
}

/// One nonnegative integer class id per line.
inline std::vector<int> load_labels_csv(std::istream& in) {
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto v = detail::parse_int(body);
    if (!v || *v < 0 || *v > 1'000'000)
      throw ParseError(lineno, "bad label '" + std::string(body) + "'");
    labels.push_back(static_cast<int>(*v));
  }
  return labels;
}

inline void write_features_csv(std::ostream& out, const Matrix& x) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j)
      out << (j ? "," : "") << detail::format_double(x(i, j));
    out << '\n';
  }
}

inline void write_labels_csv(std::ostream& out, const std::vector<int>& y) {
  for (int v : y) out << v << '\n';
}

/// Training settings read from JSON. Every key is optional:
///
///   {"hidden": 64, "dropout": 0.5, "learning_rate": 0.01,
///    "weight_decay": 5e-4, "epochs": 200, "patience": 50,
///    "param_seed": 0, "dropout_seed": 0, "split_seed": 0, "n_splits": 10,
///    "ratios": [0.6, 0.2, 0.2], "metric": "accuracy"}
struct TrainConfig {
  Hyperparams hp{};
  TrainSeeds seeds{};
  std::uint64_t split_seed = 0;
  std::size_t n_splits = 10;
  SplitRatios ratios{};
  MetricKind metric = MetricKind::accuracy;
};

inline TrainConfig parse_train_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("train config must be a JSON object");
  static const char* known[] = {"hidden",     "dropout",      "learning_rate", "weight_decay",
                                "epochs",     "patience",     "param_seed",    "dropout_seed",
                                "split_seed", "n_splits",     "ratios",        "metric"};
  for (const auto& [key, _] : j.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ValidationError("train config: unknown key '" + key + "'");
  TrainConfig c;
  try {
    c.hp.hidden = j.value("hidden", c.hp.hidden);
    c.hp.dropout = j.value("dropout", c.hp.dropout);
    c.hp.learning_rate = j.value("learning_rate", c.hp.learning_rate);
    c.hp.weight_decay = j.value("weight_decay", c.hp.weight_decay);
    c.hp.epochs = j.value("epochs", c.hp.epochs);
    c.hp.patience = j.value("patience", c.hp.patience);
    c.seeds.param_seed = j.value("param_seed", c.seeds.param_seed);
    c.seeds.dropout_seed = j.value("dropout_seed", c.seeds.dropout_seed);
    c.split_seed = j.value("split_seed", c.split_seed);
    c.n_splits = j.value("n_splits", c.n_splits);
    if (j.contains("ratios")) {
      const auto r = j.at("ratios").get<std::vector<double>>();
      if (r.size() != 3) throw ValidationError("train config: ratios needs 3 entries");
      c.ratios = {r[0], r[1], r[2]};
    }
    if (j.contains("metric")) c.metric = metric_from_string(j.at("metric").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("train config: ") + e.what());
  }
  if (c.hp.hidden == 0) throw ValidationError("train config: hidden must be >= 1");
  if (!(c.hp.dropout >= 0.0 && c.hp.dropout < 1.0))
    throw ValidationError("train config: dropout must lie in [0, 1)");
  if (!(c.hp.learning_rate > 0.0)) throw ValidationError("train config: learning_rate must be > 0");
  if (!(c.hp.weight_decay >= 0.0)) throw ValidationError("train config: weight_decay must be >= 0");
  if (c.hp.epochs == 0) throw ValidationError("train config: epochs must be >= 1");
  if (c.n_splits == 0) throw ValidationError("train config: n_splits must be >= 1");
  return c;
}

inline TrainConfig load_train_config(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("train config is not valid JSON: ") + e.what());
  }
  return parse_train_config(j);
}

/// Assembles a dataset and draws its splits.
inline Dataset make_dataset(Graph g, Matrix features, std::vector<int> labels,
                            const TrainConfig& cfg) {
  Dataset d;
  d.graph = std::move(g);
  d.features = std::move(features);
  d.labels = std::move(labels);
  d.num_classes = d.labels.empty()
                      ? 0
                      : static_cast<std::size_t>(*std::max_element(d.labels.begin(), d.labels.end())) + 1;
  d.metric = cfg.metric;
  d.split_seed = cfg.split_seed;
  d.validate();
  d.splits = make_splits(d.graph.n(), cfg.ratios, cfg.n_splits, cfg.split_seed, d.labels);
  return d;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return in;
}

}  // namespace specwire
