#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qg/config.hpp"
#include "qg/io.hpp"

namespace fs = std::filesystem;
using namespace qg;

namespace {

// Exit codes: 0 success, 1 validation failure, 2 runtime error.
constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kRuntimeError = 2;

std::vector<EdgeSet> sets_to_check(const RunConfig& cfg) {
  if (cfg.kind == "wegner") return cfg.wegner.edge_sets;
  if (cfg.kind == "ids") return cfg.ids.exhaustion;
  return {EdgeSet::all(*cfg.graph)};
}

int cmd_validate(const std::string& path) {
  const RunConfig cfg = load_config(path);
  bool ok = true;

  for (const auto& [v, cond] : cfg.conditions->entries()) {
    const ConditionReport rep = validate(cond);
    std::cout << "vertex " << v << ": " << to_string(cond.tag) << "(" << cond.degree
              << ")";
    if (rep.ok()) {
      std::cout << " ok\n";
    } else {
      ok = false;
      std::cout << " INVALID";
      if (!rep.rank_ok) std::cout << " rank=" << rep.rank << "!=" << cond.degree;
      if (!rep.hermitian_ok) std::cout << " hermitian_defect=" << rep.hermitian_defect;
      std::cout << "\n";
    }
  }

  for (const EdgeSet& set : sets_to_check(cfg)) {
    const CoveringResult cov = check_covering(*cfg.alloy, set);
    std::cout << "edge_set n=" << set.size() << ": kappa=" << format_double(cov.kappa)
              << " active_sites=" << (cov.has_sites ? cov.active_sites.size() : 0);
    if (cov.kappa > 0.0) {
      const SummabilityConstants c =
          summability_constants(*cfg.alloy, set, cov.active_sites);
      std::cout << " C1=" << format_double(c.c1) << " C2=" << format_double(c.c2)
                << " C3=" << format_double(c.c3) << "\n";
    } else {
      ok = false;
      std::cout << " COVERING FAILS\n";
    }
  }

  if (cfg.kind == "wegner")
    for (double eps : cfg.wegner.epsilons)
      if (eps > 0.5)
        std::cout << "warning: eps=" << format_double(eps)
                  << " exceeds 1/2 (bound hypothesis)\n";

  std::cout << (ok ? "validate: OK" : "validate: FAILED") << "\n";
  return ok ? kOk : kValidationFailure;
}

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> mesh_h;
  std::optional<std::string> out;
  std::optional<int> threads;
  bool oracle_dense = false;
};

std::string resolve_out_dir(const RunConfig& cfg, const RunOverrides& ov) {
  if (ov.out) return *ov.out;
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("QGRAPH_OUT")) return env;
  return "out";
}

int cmd_run(const std::string& path, const RunOverrides& ov) {
  RunConfig cfg = load_config(path);
  if (ov.seed) cfg.set_seed(*ov.seed);
  if (ov.samples) cfg.set_samples(*ov.samples);
  if (ov.mesh_h) cfg.set_mesh_h(*ov.mesh_h);
  if (ov.threads) cfg.set_threads(*ov.threads);
  if (ov.oracle_dense) cfg.set_oracle_dense(true);

  const std::string out = resolve_out_dir(cfg, ov);
  fs::create_directories(out);
  OutputStamp stamp{cfg.config_hash, cfg.seed(), {}};

  if (cfg.kind == "wegner") {
    const WegnerReport rep = run_wegner(*cfg.alloy, *cfg.conditions, cfg.wegner);
    write_wegner_csv(out + "/wegner.csv", rep, stamp);
    write_wegner_summary(out + "/summary.txt", rep, stamp);
    if (cfg.emit_svg) {
      std::vector<std::pair<std::string, std::vector<double>>> series;
      const std::vector<double> grid = cfg.wegner.grid.points();
      size_t c = 0;
      for (const WegnerSetInfo& s : rep.sets)
        for (double eps : cfg.wegner.epsilons) {
          std::vector<double> ratios(grid.size());
          for (size_t k = 0; k < grid.size(); ++k) ratios[k] = rep.cells[c++].ratio;
          series.emplace_back(
              "n=" + std::to_string(s.n_edges) + " eps=" + format_double(eps),
              std::move(ratios));
        }
      write_svg_lines(out + "/wegner.svg", "interval count / bound vs lambda", grid,
                      series);
    }
    for (const WegnerSetInfo& s : rep.sets)
      std::cout << "n=" << s.n_edges << " kappa=" << format_double(s.kappa)
                << " proof_constant=" << format_double(s.proof_constant) << "\n";
    for (const WegnerSummary& s : rep.summaries)
      std::cout << "n=" << s.n_edges << " eps=" << format_double(s.eps)
                << " max_mean=" << format_double(s.max_mean)
                << " max_ratio=" << format_double(s.max_ratio) << "\n";
    // Modulus slope per edge set when several widths were sampled.
    if (cfg.wegner.epsilons.size() >= 2)
      for (const WegnerSetInfo& si : rep.sets) {
        std::vector<double> xs, ys;
        for (const WegnerSummary& s : rep.summaries)
          if (s.n_edges == si.n_edges && s.max_mean > 0.0) {
            xs.push_back(s.eps);
            ys.push_back(s.max_mean);
          }
        if (xs.size() >= 2)
          std::cout << "n=" << si.n_edges
                    << " slope(max_mean vs eps)=" << format_double(loglog_slope(xs, ys))
                    << "\n";
      }
    for (const std::string& w : rep.warnings) std::cout << "warning: " << w << "\n";
  } else if (cfg.kind == "ids") {
    const std::vector<IdsCurve> curves = run_ids(*cfg.alloy, *cfg.conditions, cfg.ids);
    write_ids_csv(out + "/ids.csv", curves, stamp);
    if (cfg.emit_svg) {
      std::vector<std::pair<std::string, std::vector<double>>> series;
      for (const IdsCurve& c : curves)
        series.emplace_back("n=" + std::to_string(c.n_edges), c.value);
      write_svg_lines(out + "/ids.svg", "normalized counting function",
                      cfg.ids.grid.points(), series);
    }
    for (size_t i = 0; i + 1 < curves.size(); ++i) {
      double sup = 0.0;
      for (size_t k = 0; k < curves[i].value.size(); ++k)
        sup = std::max(sup, std::fabs(curves[i].value[k] - curves[i + 1].value[k]));
      std::cout << "sup|N_" << curves[i].n_edges << " - N_" << curves[i + 1].n_edges
                << "| = " << format_double(sup) << "\n";
    }
  } else if (cfg.kind == "ssf_lemmas") {
    bool all_ok = true;
    if (cfg.has_graph_fixture) {
      const LemmaReport rep = verify_lemma_graph(cfg.graph_fixture);
      write_lemma_graph_csv(out + "/lemma_graph.csv", rep, stamp);
      std::cout << "graph fixture: " << (rep.ok ? "PASS" : "FAIL")
                << " max|xi|=" << rep.max_abs_xi
                << " boundary_term=" << rep.boundary_term << "\n";
      all_ok = all_ok && rep.ok;
    }
    if (cfg.has_edge_fixture) {
      const LemmaReport rep = verify_lemma_edge(cfg.edge_fixture);
      write_lemma_edge_csv(out + "/lemma_edge.csv", rep, stamp);
      std::cout << "edge fixture: " << (rep.ok ? "PASS" : "FAIL")
                << " max|xi|=" << rep.max_abs_xi << " bound=" << format_double(rep.bound)
                << "\n";
      all_ok = all_ok && rep.ok;
    }
    std::cout << "lemma checks: " << (all_ok ? "PASS" : "FAIL") << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral simulation for random operators on metric graphs"};
  app.require_subcommand(1);

  std::string config_path;
  RunOverrides ov;

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a config file");
  validate_cmd->add_option("config", config_path, "config file")->required();

  CLI::App* run_cmd = app.add_subcommand("run", "run the configured experiment");
  run_cmd->add_option("config", config_path, "config file")->required();
  std::uint64_t seed_opt = 0;
  int samples_opt = 0, threads_opt = 0;
  double mesh_opt = 0.0;
  std::string out_opt;
  CLI::Option* o_seed = run_cmd->add_option("--seed", seed_opt, "override the seed");
  CLI::Option* o_samples =
      run_cmd->add_option("--samples", samples_opt, "override the sample count");
  CLI::Option* o_mesh = run_cmd->add_option("--mesh", mesh_opt, "override mesh_h");
  CLI::Option* o_out = run_cmd->add_option("--out", out_opt, "output directory");
  CLI::Option* o_threads =
      run_cmd->add_option("--threads", threads_opt, "worker threads (0 = all cores)");
  run_cmd->add_flag("--oracle-dense", ov.oracle_dense,
                    "count through the dense eigensolver (cross-check path)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidationFailure;
  }

  try {
    if (*validate_cmd) return cmd_validate(config_path);
    if (*o_seed) ov.seed = seed_opt;
    if (*o_samples) ov.samples = samples_opt;
    if (*o_mesh) ov.mesh_h = mesh_opt;
    if (*o_out) ov.out = out_opt;
    if (*o_threads) ov.threads = threads_opt;
    return cmd_run(config_path, ov);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
