// Copyright 2026 The linkprop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// linkprop: command line front end for ingestion, propagation,
// classification, evaluation, parameter sweeps and synthetic data.
//
// Settings come from, in decreasing precedence: command line flags, the
// flat `key = value` file named by --config, built-in defaults.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include "CLI/CLI.hpp"
#endif
#include "linkprop/linkprop.hpp"

namespace fs = std::filesystem;
using namespace linkprop;

namespace {

enum ExitCode { kOk = 0, kValidationFailure = 2, kIoFailure = 3, kNumericFailure = 4 };

struct RunConfig {
  std::string edges, clusters, exceptions, seeds, truth, snapshot, scores;
  std::string out = ".";
  PropagationConfig prop;
  double tolerance = -1.0;  // negative: run all iterations
  std::string population = "images";
  std::vector<double> k_grid = kDefaultKGrid;
  std::vector<size_t> n_grid = {5};
  std::vector<double> alpha_grid = {0.5};
  uint64_t min_area = kDefaultMinImageArea;
  PlantedParams gen;

  std::string snapshot_path() const {
    return snapshot.empty() ? (fs::path(out) / "graph.snapshot").string() : snapshot;
  }
  std::string scores_path() const {
    return scores.empty() ? (fs::path(out) / "scores.tsv").string() : scores;
  }
  std::string out_path(const char* name) const { return (fs::path(out) / name).string(); }

  PropagationConfig propagation() const {
    PropagationConfig p = prop;
    if (tolerance >= 0.0) p.residual_tolerance = tolerance;
    return p;
  }
};

// ---- file helpers ----------------------------------------------------------

void require_input(const std::string& path, const char* what) {
  if (path.empty()) throw validation_error(std::string("missing required input: ") + what);
  if (!fs::exists(path)) {
    throw validation_error(std::string(what) + " file does not exist: " + path);
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open for reading: " + path);
  return in;
}

// Writes through a temporary buffer so a failed command leaves no partial
// file behind.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ostringstream buf;
  body(buf);
  fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw io_error("cannot create directory " + p.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << buf.str();
  if (!out.flush()) throw io_error("write failed: " + path);
}

BipartiteGraph load_snapshot(const RunConfig& cfg) {
  const std::string path = cfg.snapshot_path();
  require_input(path, "snapshot");
  auto in = open_in(path);
  return read_snapshot(in, path);
}

HostingExceptions load_exceptions(const RunConfig& cfg) {
  if (cfg.exceptions.empty()) return {};
  require_input(cfg.exceptions, "exceptions");
  auto in = open_in(cfg.exceptions);
  return read_hosting_exceptions(in, cfg.exceptions);
}

ClusterMap load_clusters(const RunConfig& cfg) {
  if (cfg.clusters.empty()) return {};
  require_input(cfg.clusters, "clusters");
  auto in = open_in(cfg.clusters);
  return read_cluster_map(in, cfg.clusters);
}

SeedLabels load_seeds(const RunConfig& cfg, const BipartiteGraph& g) {
  require_input(cfg.seeds, "seeds");
  auto exceptions = load_exceptions(cfg);
  auto in = open_in(cfg.seeds);
  SeedFileStats stats;
  auto seeds = read_seed_labels(in, g, exceptions, &stats, cfg.seeds);
  std::cerr << "seed_entries\t" << stats.entries << "\nseed_sites_matched\t" << stats.matched
            << "\nseed_unknown_sites\t" << stats.unknown_sites << "\nseed_conflicts\t"
            << stats.conflicts << '\n';
  return seeds;
}

GroundTruth load_truth(const RunConfig& cfg) {
  require_input(cfg.truth, "truth");
  auto in = open_in(cfg.truth);
  return read_ground_truth(in, cfg.truth);
}

ScoreMatrix load_scores(const RunConfig& cfg, const BipartiteGraph& g) {
  const std::string path = cfg.scores_path();
  require_input(path, "scores");
  auto in = open_in(path);
  return read_scores(in, g, path);
}

// ---- subcommands -----------------------------------------------------------

void cmd_ingest(const RunConfig& cfg) {
  require_input(cfg.edges, "edges");
  IngestOptions options;
  options.exceptions = load_exceptions(cfg);
  options.clusters = load_clusters(cfg);
  options.min_area = cfg.min_area;

  auto in = open_in(cfg.edges);
  EdgeIngestor ingestor(std::move(options));
  ingestor.add_stream(in);
  if (in.bad()) throw io_error("read failed: " + cfg.edges);
  BipartiteGraph raw = ingestor.finish();
  BipartiteGraph g = drop_imageless_sites(raw);
  g.check_invariants();
  IngestSummary summary = ingestor.summary();
  summary.imageless_sites_dropped = raw.site_count() - g.site_count();
  summary.sites = g.site_count();

  summary.write(std::cerr);
  write_file(cfg.out_path("ingest_summary.txt"), [&](std::ostream& os) { summary.write(os); });
  if (g.edge_count() == 0) {
    throw validation_error(cfg.edges + ": no usable edges (empty or fully filtered input)");
  }
  write_file(cfg.snapshot_path(), [&](std::ostream& os) { write_snapshot(os, g); });
}

void cmd_propagate(const RunConfig& cfg) {
  auto pc = cfg.propagation();
  pc.validate();
  auto g = load_snapshot(cfg);
  auto seeds = load_seeds(cfg, g);
  auto result = propagate(g, seeds, pc);
  write_file(cfg.scores_path(), [&](std::ostream& os) { write_scores(os, g, result.scores); });
  write_file(cfg.out_path("trace.tsv"), [&](std::ostream& os) { write_trace(os, result.trace); });
}

void cmd_classify(const RunConfig& cfg) {
  cfg.prop.validate();
  auto population = parse_population(cfg.population);
  auto g = load_snapshot(cfg);
  auto f = load_scores(cfg, g);
  auto members = population_vertices(g, population);
  auto ranked = rank(f, members, cfg.prop.epsilon);
  auto verdicts = classify_top_k(ranked, cfg.prop.k);
  write_file(cfg.out_path("verdicts.tsv"),
             [&](std::ostream& os) { write_verdicts(os, g, ranked, verdicts); });
}

void cmd_evaluate(const RunConfig& cfg) {
  cfg.prop.validate();
  CompareOptions compare;
  compare.population = parse_population(cfg.population);
  compare.clusters = load_clusters(cfg);
  auto g = load_snapshot(cfg);
  auto f = load_scores(cfg, g);
  auto seeds = load_seeds(cfg, g);
  auto truth = load_truth(cfg);

  auto members = population_vertices(g, compare.population);
  auto ranked = rank(f, members, cfg.prop.epsilon);
  auto verdicts = classify_top_k(ranked, cfg.prop.k);
  auto report = precision_recall(g, verdicts, truth, compare.clusters);
  auto curve = pr_sweep(g, f, compare.population, truth, cfg.k_grid, cfg.prop.epsilon,
                        compare.clusters);
  auto cmp = compare_scores_to_baseline(g, seeds, f, truth, cfg.prop.epsilon, compare);

  write_file(cfg.out_path("report.txt"), [&](std::ostream& os) {
    os << "k\t" << format_param(cfg.prop.k) << '\n'
       << "epsilon\t" << format_param(cfg.prop.epsilon) << '\n'
       << "population\t" << to_string(compare.population) << '\n'
       << "truth_size\t" << truth.size() << '\n'
       << "truth_adult\t" << truth.positives() << '\n';
    write_report(os, "propagation_", report);
    write_report(os, "baseline_", cmp.baseline);
    os << "matched_k\t" << format_param(cmp.propagation.k) << '\n';
    write_report(os, "matched_", EvalReport::from(cmp.propagation.counts));
    os << "recall_delta\t" << format_double(cmp.recall_delta) << '\n'
       << "recall_gain\t" << format_optional(cmp.recall_gain) << '\n';
  });
  write_file(cfg.out_path("curve.tsv"), [&](std::ostream& os) { write_curve(os, curve); });
}

void cmd_sweep(const RunConfig& cfg) {
  cfg.prop.validate();
  if (cfg.n_grid.empty() || cfg.alpha_grid.empty() || cfg.k_grid.empty()) {
    throw validation_error("sweep grids must be non-empty");
  }
  auto population = parse_population(cfg.population);
  auto clusters = load_clusters(cfg);
  auto g = load_snapshot(cfg);
  auto seeds = load_seeds(cfg, g);
  auto truth = load_truth(cfg);

  const size_t grid_size = cfg.n_grid.size() * cfg.alpha_grid.size() * cfg.k_grid.size();
  std::ostringstream table;
  table << "n\talpha\tk\tadult_verdicts\ttrue_positives\tfalse_positives\t"
           "false_negatives\ttrue_negatives\tprecision\trecall\n";
  size_t rows = 0;
  for (size_t n : cfg.n_grid) {
    for (double alpha : cfg.alpha_grid) {
      PropagationConfig pc = cfg.propagation();
      pc.iterations = n;
      pc.alpha = alpha;
      pc.residual_tolerance.reset();
      pc.validate();
      auto f = propagate(g, seeds, pc).scores;
      for (const auto& p :
           pr_sweep(g, f, population, truth, cfg.k_grid, pc.epsilon, clusters)) {
        const auto& c = p.counts;
        table << n << '\t' << format_param(alpha) << '\t' << format_param(p.k) << '\t'
              << p.adult_verdicts << '\t' << c.true_positives << '\t' << c.false_positives
              << '\t' << c.false_negatives << '\t' << c.true_negatives << '\t'
              << format_optional(p.precision()) << '\t' << format_optional(p.recall())
              << '\n';
        ++rows;
      }
    }
  }
  write_file(cfg.out_path("sweep.tsv"), [&](std::ostream& os) { os << table.str(); });
  std::cout << "grid_size\t" << grid_size << "\nrows\t" << rows << '\n';
}

void cmd_gen(const RunConfig& cfg) {
  auto data = generate(cfg.gen);
  write_file(cfg.out_path("edges.tsv"),
             [&](std::ostream& os) { write_edge_file(os, data.graph); });
  write_file(cfg.out_path("seeds.tsv"),
             [&](std::ostream& os) { write_seed_file(os, data.graph, data.seeds); });
  write_file(cfg.out_path("truth.tsv"),
             [&](std::ostream& os) { write_truth_file(os, data.truth); });
  std::cout << "sites\t" << data.graph.site_count() << "\nimages\t"
            << data.graph.image_count() << "\nedges\t" << data.graph.edge_count() << '\n';
}

// ---- option plumbing -------------------------------------------------------

// Binds each key both to CLI11 flags on the given subcommands and to a
// setter used for config-file values.
template <typename T>
inline constexpr bool kIsList = false;
template <typename T>
inline constexpr bool kIsList<std::vector<T>> = true;

class OptionTable {
 public:
  template <typename T>
  void add(std::initializer_list<CLI::App*> subs, const std::string& key, T& var,
           const std::string& help) {
    for (CLI::App* sub : subs) {
      auto* opt = sub->add_option("--" + key, var, help)->capture_default_str();
      if constexpr (kIsList<T>) opt->delimiter(',');
    }
    setters_[key] = [&var, key](const std::string& value) {
      bool ok;
      if constexpr (kIsList<T>) {
        var.clear();
        std::stringstream ss(value);
        std::string item;
        ok = true;
        while (ok && std::getline(ss, item, ',')) {
          typename T::value_type x{};
          ok = CLI::detail::lexical_cast(std::string(detail::trim(item)), x);
          var.push_back(x);
        }
      } else {
        ok = CLI::detail::lexical_cast(value, var);
      }
      if (!ok) throw validation_error("config key '" + key + "': bad value '" + value + "'");
    };
  }

  void add_flag(std::initializer_list<CLI::App*> subs, const std::string& key, bool& var,
                const std::string& help) {
    for (CLI::App* sub : subs) sub->add_flag("--" + key, var, help);
    setters_[key] = [&var, key](const std::string& value) {
      if (!CLI::detail::lexical_cast(value, var)) {
        throw validation_error("config key '" + key + "': bad value '" + value + "'");
      }
    };
  }

  void apply_file(const std::string& path) {
    require_input(path, "config");
    auto in = open_in(path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view body = detail::trim(line);
      if (body.empty() || body.front() == '#') continue;
      auto eq = body.find('=');
      auto where = path + ":" + std::to_string(line_no) + ": ";
      if (eq == std::string_view::npos) throw validation_error(where + "expected key = value");
      std::string key(detail::trim(body.substr(0, eq)));
      std::replace(key.begin(), key.end(), '_', '-');
      std::string value(detail::trim(body.substr(eq + 1)));
      auto it = setters_.find(key);
      if (it == setters_.end()) throw validation_error(where + "unknown key '" + key + "'");
      try {
        it->second(value);
      } catch (const Error& e) {
        throw validation_error(where + e.what());
      }
    }
  }

 private:
  std::map<std::string, std::function<void(const std::string&)>> setters_;
};

std::string find_config_arg(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string_view a(argv[i]);
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.substr(0, 9) == "--config=") return std::string(a.substr(9));
  }
  return {};
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kIo: return kIoFailure;
    case ErrorKind::kNumeric: return kNumericFailure;
    default: return kValidationFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Label propagation over site-image link graphs"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value settings file");

  auto* ingest = app.add_subcommand("ingest", "build a graph snapshot from an edge file");
  auto* prop = app.add_subcommand("propagate", "propagate seed labels, write scores and trace");
  auto* classify = app.add_subcommand("classify", "rank scores and label the top k fraction");
  auto* evaluate = app.add_subcommand("evaluate", "precision/recall, PR curve and baseline");
  auto* sweep = app.add_subcommand("sweep", "evaluate a grid of (n, alpha, k)");
  auto* gen = app.add_subcommand("gen", "write a planted synthetic dataset");
  for (auto* sub : {ingest, prop, classify, evaluate, sweep, gen}) {
    sub->add_option("--config", config_path, "flat key = value settings file");
  }

  OptionTable t;
  t.add({ingest}, "edges", cfg.edges, "edge file: site_url<TAB>image_key[<TAB>w<TAB>h]");
  t.add({ingest, evaluate, sweep}, "clusters", cfg.clusters, "image_key<TAB>cluster_id file");
  t.add({ingest, prop, evaluate, sweep}, "exceptions", cfg.exceptions,
        "hosting exception domains, one per line");
  t.add({ingest}, "min-area", cfg.min_area, "drop images with known area below this");
  t.add({ingest, prop, classify, evaluate, sweep}, "snapshot", cfg.snapshot,
        "graph snapshot path (default <out>/graph.snapshot)");
  t.add({prop, evaluate, sweep}, "seeds", cfg.seeds, "site_url<TAB>adult|decent file");
  t.add({evaluate, sweep}, "truth", cfg.truth, "image_key<TAB>adult|decent file");
  t.add({prop, classify, evaluate}, "scores", cfg.scores,
        "score file path (default <out>/scores.tsv)");
  t.add({ingest, prop, classify, evaluate, sweep, gen}, "out", cfg.out, "output directory");
  t.add({prop}, "alpha", cfg.prop.alpha, "propagation mixing weight in (0,1)");
  t.add({prop}, "iterations", cfg.prop.iterations, "number of propagation steps");
  t.add({prop}, "tolerance", cfg.tolerance, "stop once the update norm is <= this");
  t.add_flag({prop}, "trace-objective", cfg.prop.trace_objective,
             "record the objective in the trace");
  t.add({classify, evaluate, sweep}, "epsilon", cfg.prop.epsilon, "ranking smoother");
  t.add({classify, evaluate}, "k", cfg.prop.k, "fraction of the population labeled adult");
  t.add({classify, evaluate, sweep}, "population", cfg.population, "images | all");
  t.add({evaluate, sweep}, "k-grid", cfg.k_grid, "comma-separated k values");
  t.add({sweep}, "n-grid", cfg.n_grid, "comma-separated iteration counts");
  t.add({sweep}, "alpha-grid", cfg.alpha_grid, "comma-separated alpha values");
  t.add({gen}, "adult-sites", cfg.gen.adult_sites, "sites in the adult community");
  t.add({gen}, "decent-sites", cfg.gen.decent_sites, "sites in the decent community");
  t.add({gen}, "adult-images", cfg.gen.adult_images, "images in the adult community");
  t.add({gen}, "decent-images", cfg.gen.decent_images, "images in the decent community");
  t.add({gen}, "p-in", cfg.gen.p_in, "within-community edge probability");
  t.add({gen}, "p-out", cfg.gen.p_out, "cross-community edge probability");
  t.add({gen}, "label-noise", cfg.gen.label_noise, "probability a site seed is flipped");
  t.add({gen}, "seed", cfg.gen.rng_seed, "generator seed");
  t.add({gen}, "max-edges", cfg.gen.max_edges, "refuse if expected edges exceed this");

  try {
    if (auto path = find_config_arg(argc, argv); !path.empty()) t.apply_file(path);
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      int rc = app.exit(e);
      return rc == 0 ? kOk : kValidationFailure;
    }

    if (*ingest) cmd_ingest(cfg);
    else if (*prop) cmd_propagate(cfg);
    else if (*classify) cmd_classify(cfg);
    else if (*evaluate) cmd_evaluate(cfg);
    else if (*sweep) cmd_sweep(cfg);
    else if (*gen) cmd_gen(cfg);
  } catch (const Error& e) {
    std::cerr << "linkprop: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "linkprop: " << e.what() << '\n';
    return kIoFailure;
  }
  return kOk;
}
