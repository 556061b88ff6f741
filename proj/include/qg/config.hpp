#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "qg/alloy.hpp"
#include "qg/conditions.hpp"
#include "qg/experiments.hpp"
#include "qg/graph.hpp"

namespace qg {

// Parsed run description. Heap members keep internal pointers stable when
// the config is moved around.
struct RunConfig {
  std::unique_ptr<MetricGraph> graph;
  std::unique_ptr<ConditionField> conditions;
  std::unique_ptr<AlloyModel> alloy;

  std::string kind;  // "wegner" | "ids" | "ssf_lemmas"
  WegnerParams wegner;
  IdsParams ids;
  bool has_graph_fixture = false;
  LemmaGraphFixture graph_fixture;
  bool has_edge_fixture = false;
  LemmaEdgeFixture edge_fixture;

  std::string out_dir;  // empty = unset; the CLI falls back to QGRAPH_OUT, then "out"
  bool emit_svg = false;
  std::string config_hash;  // fnv1a64 of the raw config bytes, hex

  // Scalar overrides applied to every experiment block.
  void set_seed(std::uint64_t seed);
  void set_samples(int samples);
  void set_mesh_h(double h);
  void set_threads(int threads);
  void set_oracle_dense(bool on);

  std::uint64_t seed() const { return wegner.seed; }
  int samples() const { return wegner.samples; }
  double mesh_h() const { return wegner.mesh_h; }
};

// Parses and validates a config file. Unknown keys are rejected with the
// offending context in the message; range violations throw except the
// eps <= 1/2 hypothesis, which only warns at run time.
RunConfig load_config(const std::string& path);

// Same schema from an in-memory string (tests).
RunConfig parse_config(const std::string& text, const std::string& name = "<inline>");

}  // namespace qg
