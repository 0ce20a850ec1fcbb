// specwire: command-line front end for the rewiring, spectral and GCN
// trend tools. JSON goes to stdout or --out; errors go to stderr with exit
// code 2 (bad input) or 3 (numerical failure).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "specwire/specwire.hpp"

namespace sw = specwire;
using sw::json;

namespace {

enum class Format { json, csv };

struct Global {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

Format format_of(const Global& g) { return g.format == "csv" ? Format::csv : Format::json; }

// Writes to --out if given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw sw::ValidationError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const Global& g, const json& doc) {
  Output out(g.out);
  out.stream() << doc.dump(2) << '\n';
}

sw::Graph read_graph(const std::string& path) {
  auto in = sw::open_input(path);
  return sw::load_edge_list(in);
}

json graph_json(const sw::Graph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.weight});
  return {{"n", g.n()}, {"edges", edges}, {"loops", g.loop_weights()}};
}

// Edge list with "u,v,w" rows, loops as "i,i,w".
void write_graph_csv(std::ostream& out, const sw::Graph& g) {
  out << "# nodes " << g.n() << '\n';
  for (const auto& e : g.edges())
    out << e.u << ',' << e.v << ',' << sw::detail::format_double(e.weight) << '\n';
  for (std::size_t i = 0; i < g.n(); ++i)
    if (g.loop_weight(i) != 0.0)
      out << i << ',' << i << ',' << sw::detail::format_double(g.loop_weight(i)) << '\n';
}

void emit_graph(const Global& gl, const sw::Graph& g, json extra = json::object()) {
  if (format_of(gl) == Format::csv) {
    Output out(gl.out);
    write_graph_csv(out.stream(), g);
    return;
  }
  json doc = sw::with_schema(graph_json(g));
  doc.update(extra);
  emit_json(gl, doc);
}

std::vector<double> range_params(double lo, double hi) {
  std::vector<double> p;
  for (double v = lo; v <= hi + 1e-12; v += 1.0) p.push_back(v);
  return p;
}

// --- verify ---------------------------------------------------------------

struct VerifyOptions {
  std::string graph;
  double param = 1e-3;  // perturbation size
  double lo = 1.0;
  double hi = 5.0;
};

json verify_bounds(const sw::Graph& g, const VerifyOptions& o) {
  json reports = json::array();
  bool pass = true;
  for (auto mode : {sw::RewireMode::self_loop, sw::RewireMode::parallel_edge})
    for (double p : range_params(o.lo, o.hi)) {
      const auto r = sw::verify_lemma_bounds(g, mode, p);
      pass = pass && r.holds && r.delta1_holds && r.deltan_holds;
      reports.push_back(r);
    }
  return {{"check", "bounds"}, {"pass", pass}, {"reports", reports}};
}

json verify_range(const sw::Graph& g, const VerifyOptions& o) {
  json reports = json::array();
  bool pass = true;
  for (auto mode : {sw::RewireMode::self_loop, sw::RewireMode::parallel_edge})
    for (double p : range_params(o.lo, o.hi)) {
      const auto r = sw::verify_range_regular(g, mode, p);
      pass = pass && r.pass;
      reports.push_back(r);
    }
  return {{"check", "range"}, {"pass", pass}, {"reports", reports}};
}

json verify_monotone(const sw::Graph& g, const VerifyOptions& o) {
  const auto a = sw::verify_monotonicity(g, sw::RewireMode::self_loop, range_params(o.lo, o.hi));
  const auto b =
      sw::verify_monotonicity(g, sw::RewireMode::parallel_edge, range_params(o.lo - 1.0, o.hi));
  return {{"check", "monotone"}, {"pass", a.pass && b.pass}, {"reports", {a, b}}};
}

json verify_corollary(const sw::Graph& g, const VerifyOptions& o) {
  json reports = json::array();
  bool pass = true;
  for (double gamma : range_params(o.lo, o.hi)) {
    const auto r = sw::verify_corollary(g, 0.0, gamma);
    pass = pass && r.pass;
    reports.push_back(r);
  }
  return {{"check", "corollary"}, {"pass", pass}, {"reports", reports}};
}

json verify_perturbation(const sw::Graph& g, const VerifyOptions& o) {
  const auto first = sw::verify_perturbation(g, sw::RewireMode::self_loop, o.param);
  const auto decay = sw::perturbation_decay(g, sw::RewireMode::self_loop, o.param);
  const auto pe = sw::verify_perturbation(g, sw::RewireMode::parallel_edge, o.param);
  return {{"check", "perturbation"},
          {"pass", decay.pass},
          {"self_loop", first},
          {"self_loop_decay", decay},
          {"parallel_edge", pe}};
}

json verify_all(const sw::Graph& g, const VerifyOptions& o) {
  json checks = json::array();
  bool pass = true;
  const auto add = [&](json r) {
    pass = pass && r.at("pass").get<bool>();
    checks.push_back(std::move(r));
  };
  const bool regular = sw::regular_degree(g).has_value();
  const bool positive = !g.has_loops() && [&] {
    for (std::size_t i = 0; i < g.n(); ++i)
      if (!(g.degree(i) > 0.0)) return false;
    return true;
  }();
  if (positive) add(verify_bounds(g, o));
  if (regular) {
    add(verify_range(g, o));
    add(verify_monotone(g, o));
  }
  add(verify_corollary(g, o));
  if (positive && sw::is_connected(g)) add(verify_perturbation(g, o));
  return {{"check", "all"}, {"pass", pass}, {"regular", regular}, {"checks", checks}};
}

// --- training inputs ------------------------------------------------------

struct DataOptions {
  std::string graph;
  std::string features;
  std::string labels;
  std::string config;
  std::size_t synthetic_dim = 16;
  double signal = 1.0;
  std::size_t threads = 1;
};

struct LoadedData {
  sw::Dataset data;
  sw::SweepConfig sweep;
};

LoadedData load_data(const Global& gl, const DataOptions& o) {
  sw::TrainConfig tc;
  tc.seeds = {gl.seed, gl.seed};
  tc.split_seed = gl.seed;
  if (!o.config.empty()) {
    auto in = sw::open_input(o.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw sw::ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.contains("param_seed")) j["param_seed"] = gl.seed;
    if (!j.contains("dropout_seed")) j["dropout_seed"] = gl.seed;
    if (!j.contains("split_seed")) j["split_seed"] = gl.seed;
    tc = sw::parse_train_config(j);
  }
  auto graph = read_graph(o.graph);
  auto label_in = sw::open_input(o.labels);
  auto labels = sw::load_labels_csv(label_in);
  if (labels.size() != graph.n())
    throw sw::ValidationError(std::to_string(labels.size()) + " labels for " +
                              std::to_string(graph.n()) + " nodes");
  sw::Matrix features;
  if (!o.features.empty()) {
    auto fin = sw::open_input(o.features);
    features = sw::load_features_csv(fin);
  } else {
    const auto classes =
        static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
    features = sw::synthetic_features(labels, classes, o.synthetic_dim, o.signal, gl.seed);
  }
  LoadedData ld{sw::make_dataset(std::move(graph), std::move(features), std::move(labels), tc), {}};
  ld.sweep.hp = tc.hp;
  ld.sweep.seeds = tc.seeds;
  ld.sweep.n_splits = tc.n_splits;
  ld.sweep.threads = o.threads;
  return ld;
}

void add_data_options(CLI::App* cmd, DataOptions& o) {
  cmd->add_option("--graph", o.graph, "Edge list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--labels", o.labels, "One class id per line")->required()->check(CLI::ExistingFile);
  cmd->add_option("--features", o.features, "Feature CSV; synthetic class-mean features if omitted")
      ->check(CLI::ExistingFile);
  cmd->add_option("--config", o.config, "Training config JSON")->check(CLI::ExistingFile);
  cmd->add_option("--synthetic-dim", o.synthetic_dim, "Synthetic feature width")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--signal", o.signal, "Synthetic class-mean scale");
  cmd->add_option("--threads", o.threads, "Concurrent sweep points (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph rewiring with self-loops and parallel edges: spectra, checks, GCN trends"};
  app.require_subcommand(1);
  Global gl;
  app.add_option("--seed", gl.seed, "Base seed")->capture_default_str();
  app.add_option("--out", gl.out, "Output path (default stdout)");
  app.add_option("--format", gl.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // stats
  std::string stats_graph;
  double stats_eps = sw::kDefaultLogEpsilon;
  auto* stats = app.add_subcommand("stats", "Size, density, degree and isolated-node metrics");
  stats->add_option("--graph", stats_graph, "Edge list")->required()->check(CLI::ExistingFile);
  stats->add_option("--epsilon", stats_eps, "Offset inside the logs")->capture_default_str();

  // rewire
  std::string rw_graph;
  sw::RewireConfig rw_cfg;
  auto* rw = app.add_subcommand("rewire", "Add self-loops and parallel edges");
  rw->add_option("--graph", rw_graph, "Edge list")->required()->check(CLI::ExistingFile);
  rw->add_option("--alpha", rw_cfg.alpha, "Self-loops per node")->capture_default_str();
  rw->add_option("--gamma", rw_cfg.gamma, "Extra parallel edges per edge")->capture_default_str();

  // spectrum
  std::string sp_graph, sp_operator = "laplacian";
  sw::RewireConfig sp_cfg;
  bool sp_vectors = false;
  std::size_t sp_bins = sw::kDefaultHistogramBins;
  std::size_t sp_cap = sw::kDefaultDenseCap;
  auto* sp = app.add_subcommand("spectrum", "Eigenvalues of the rewired graph; csv emits a histogram");
  sp->add_option("--graph", sp_graph, "Edge list")->required()->check(CLI::ExistingFile);
  sp->add_option("--alpha", sp_cfg.alpha, "Self-loops per node")->capture_default_str();
  sp->add_option("--gamma", sp_cfg.gamma, "Extra parallel edges per edge")->capture_default_str();
  sp->add_option("--operator", sp_operator, "laplacian or adjacency")
      ->check(CLI::IsMember({"laplacian", "adjacency"}))
      ->capture_default_str();
  sp->add_flag("--vectors", sp_vectors, "Include eigenvectors");
  sp->add_option("--bins", sp_bins, "Histogram bins")->capture_default_str();
  sp->add_option("--cap", sp_cap, "Largest n for dense decomposition")->capture_default_str();

  // verify
  VerifyOptions vo;
  std::string verify_check;
  auto* vf = app.add_subcommand("verify", "Check the spectral bounds and identities on a graph");
  vf->add_option("check", verify_check, "bounds|range|monotone|corollary|perturbation|all")
      ->required()
      ->check(CLI::IsMember({"bounds", "range", "monotone", "corollary", "perturbation", "all"}));
  vf->add_option("--graph", vo.graph, "Edge list")->required()->check(CLI::ExistingFile);
  vf->add_option("--from", vo.lo, "First integer multiplicity")->capture_default_str();
  vf->add_option("--to", vo.hi, "Last integer multiplicity")->capture_default_str();
  vf->add_option("--param", vo.param, "Perturbation size")->capture_default_str();

  // random
  auto* rnd = app.add_subcommand("random", "Seeded random graphs");
  rnd->require_subcommand(1);
  std::size_t er_n = 10;
  double er_p = 0.5;
  auto* er = rnd->add_subcommand("er", "Erdos-Renyi G(n, p)");
  er->add_option("--n", er_n, "Nodes")->capture_default_str();
  er->add_option("--p", er_p, "Edge probability")->capture_default_str();
  std::size_t circ_n = 6;
  std::vector<std::size_t> circ_offsets{1};
  auto* circ = rnd->add_subcommand("circulant", "Regular circulant graph");
  circ->add_option("--n", circ_n, "Nodes")->capture_default_str();
  circ->add_option("--offsets", circ_offsets, "Neighbor offsets")->delimiter(',');
  sw::PlantedPartitionSpec pp;
  std::string pp_labels;
  auto* planted = rnd->add_subcommand("planted", "Planted partition with labels i mod k");
  planted->add_option("--n", pp.n, "Nodes")->capture_default_str();
  planted->add_option("--k", pp.k_classes, "Classes")->capture_default_str();
  planted->add_option("--p-in", pp.p_in, "Intra-class probability")->capture_default_str();
  planted->add_option("--p-out", pp.p_out, "Inter-class probability")->capture_default_str();
  planted->add_option("--labels-out", pp_labels, "Write labels here");

  // sweep
  DataOptions sw_data;
  std::string sweep_mode = "both";
  std::size_t k_max = 5;
  auto* sweep = app.add_subcommand("sweep", "GCN trend sweep over k self-loops / parallel edges");
  add_data_options(sweep, sw_data);
  sweep->add_option("--mode", sweep_mode, "self_loop, parallel_edge or both")
      ->check(CLI::IsMember({"self_loop", "parallel_edge", "both"}))
      ->capture_default_str();
  sweep->add_option("--k-max", k_max, "Largest k (>= 3)")->capture_default_str();

  // grid
  DataOptions gr_data;
  std::size_t alpha_max = 3, gamma_max = 3;
  auto* grid = app.add_subcommand("grid", "Mean metric over an (alpha, gamma) grid");
  add_data_options(grid, gr_data);
  grid->add_option("--alpha-max", alpha_max, "Self-loops 1..alpha-max")->capture_default_str();
  grid->add_option("--gamma-max", gamma_max, "Parallel-edge steps 1..gamma-max")->capture_default_str();

  // bench
  std::string bench_graph;
  sw::RewireConfig bench_cfg{1.0, 0.0};
  sw::BenchConfig bc;
  auto* bench = app.add_subcommand("bench", "Time eigendecomposition vs a trend sweep");
  bench->add_option("--graph", bench_graph, "Edge list")->required()->check(CLI::ExistingFile);
  bench->add_option("--alpha", bench_cfg.alpha, "Self-loops per node")->capture_default_str();
  bench->add_option("--gamma", bench_cfg.gamma, "Extra parallel edges per edge")->capture_default_str();
  bench->add_option("--cap", bc.cap, "Largest n for dense decomposition")->capture_default_str();
  bench->add_option("--epochs", bc.epochs, "Epochs per sweep run")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*stats) {
      const auto g = read_graph(stats_graph);
      json doc = sw::emit(sw::compute_metrics(g, stats_eps));
      doc["components"] = sw::connected_components(g).count;
      emit_json(gl, doc);
    } else if (*rw) {
      rw_cfg.validate();
      emit_graph(gl, sw::rewire(read_graph(rw_graph), rw_cfg),
                 {{"alpha", rw_cfg.alpha}, {"gamma", rw_cfg.gamma}});
    } else if (*sp) {
      sp_cfg.validate();
      const auto g = read_graph(sp_graph);
      const auto s = sp_operator == "laplacian"
                         ? sw::laplacian_spectrum(g, sp_cfg, sp_vectors, sp_cap)
                         : sw::adjacency_spectrum(g, sp_cfg, sp_vectors, sp_cap);
      const auto st = sw::spectrum_stats(s, sw::kZeroTolerance, sp_bins);
      if (format_of(gl) == Format::csv) {
        Output out(gl.out);
        sw::write_histogram_csv(out.stream(), st.histogram);
      } else {
        json doc = sw::emit(s);
        doc["stats"] = st;
        emit_json(gl, doc);
      }
    } else if (*vf) {
      const auto g = read_graph(vo.graph);
      json body;
      if (verify_check == "bounds") body = verify_bounds(g, vo);
      else if (verify_check == "range") body = verify_range(g, vo);
      else if (verify_check == "monotone") body = verify_monotone(g, vo);
      else if (verify_check == "corollary") body = verify_corollary(g, vo);
      else if (verify_check == "perturbation") body = verify_perturbation(g, vo);
      else body = verify_all(g, vo);
      emit_json(gl, sw::with_schema(body));
    } else if (*rnd) {
      if (*er) {
        emit_graph(gl, sw::gen_erdos_renyi(er_n, er_p, gl.seed),
                   {{"generator", "er"}, {"p", er_p}, {"seed", gl.seed}});
      } else if (*circ) {
        emit_graph(gl, sw::gen_regular_circulant(circ_n, circ_offsets),
                   {{"generator", "circulant"}, {"offsets", circ_offsets}});
      } else {
        const auto lg = sw::gen_planted_partition(pp.n, pp.k_classes, pp.p_in, pp.p_out, gl.seed);
        if (!pp_labels.empty()) {
          std::ofstream lo(pp_labels);
          if (!lo) throw sw::ValidationError("cannot write '" + pp_labels + "'");
          sw::write_labels_csv(lo, lg.labels);
        }
        emit_graph(gl, lg.graph,
                   {{"generator", "planted"},
                    {"labels", lg.labels},
                    {"homophily", sw::edge_homophily(lg.graph, lg.labels)},
                    {"seed", gl.seed}});
      }
    } else if (*sweep) {
      const auto ld = load_data(gl, sw_data);
      json doc = sw::with_schema({{"k_max", k_max}, {"n_splits", ld.sweep.n_splits},
                                  {"metric", sw::to_string(ld.data.metric)}});
      if (sweep_mode == "both") {
        const auto pair = sw::run_both_sweeps(ld.data, k_max, ld.sweep);
        doc["self_loop"] = pair.self_loop;
        doc["parallel_edge"] = pair.parallel_edge;
        doc["category"] = pair.category;
      } else {
        doc["trend"] = sw::run_sweep(ld.data, sw::rewire_mode_from_string(sweep_mode), k_max, ld.sweep);
      }
      emit_json(gl, doc);
    } else if (*grid) {
      const auto ld = load_data(gl, gr_data);
      const auto g = sw::run_grid(ld.data, alpha_max, gamma_max, ld.sweep);
      if (format_of(gl) == Format::csv) {
        Output out(gl.out);
        sw::write_grid_csv(out.stream(), g);
      } else {
        json doc = sw::emit(g);
        doc["metric"] = sw::to_string(ld.data.metric);
        emit_json(gl, doc);
      }
    } else if (*bench) {
      bench_cfg.validate();
      bc.seed = gl.seed;
      emit_json(gl, sw::emit(sw::run_bench(read_graph(bench_graph), bench_cfg, bc)));
    }
  } catch (const sw::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const sw::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
