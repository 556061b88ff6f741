#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qg/alloy.hpp"
#include "qg/assembly.hpp"
#include "qg/conditions.hpp"
#include "qg/graph.hpp"
#include "qg/spectral.hpp"

namespace qg {

struct LambdaGrid {
  double lo = 0.0;
  double hi = 20.0;
  int count = 41;
  std::vector<double> points() const;
};

// One table row of the interval-count experiment: averaged eigenvalue count
// in [lambda-eps, lambda+eps] against the modulus bound
// s(mu, 4 eps / kappa) * |edge set|.
struct WegnerCell {
  double lambda = 0.0;
  double eps = 0.0;
  int n_edges = 0;
  int samples = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double s_mu4 = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct WegnerSummary {
  int n_edges = 0;
  double eps = 0.0;
  double max_mean = 0.0;   // over the lambda grid
  double max_ratio = 0.0;  // over the lambda grid
};

struct WegnerSetInfo {
  int n_edges = 0;
  int dofs = 0;
  double kappa = 0.0;
  SummabilityConstants consts;
  double proof_constant = 0.0;  // c1 + c2/pi + 5 c3
};

struct WegnerReport {
  std::vector<WegnerCell> cells;  // ordered by (edge set, eps, lambda)
  std::vector<WegnerSummary> summaries;
  std::vector<WegnerSetInfo> sets;
  std::vector<std::string> warnings;
};

struct WegnerParams {
  std::vector<EdgeSet> edge_sets;
  LambdaGrid grid;
  std::vector<double> epsilons;
  int samples = 100;
  std::uint64_t seed = 1;
  double mesh_h = 1.0 / 32;
  int threads = 0;  // 0 = all hardware threads
  bool oracle_dense = false;
  double wall_clock_limit_s = 0.0;  // 0 = unlimited
};

// Monte Carlo sweep of averaged interval counts. Requires the covering
// bound kappa > 0 on every edge set; warns when an eps exceeds 1/2.
// Deterministic in (seed, config) regardless of the thread count.
WegnerReport run_wegner(const AlloyModel& model, const ConditionField& field,
                        const WegnerParams& params);

// Normalized finite-volume counting function along an exhaustion step.
struct IdsCurve {
  int step = 0;
  int n_edges = 0;
  double vol = 0.0;
  std::vector<double> lambda;
  std::vector<double> value;      // mean of count_below / vol
  std::vector<double> std_error;
  std::vector<double> increment;  // mean of (N(l+eps) - N(l)) / vol
};

struct IdsParams {
  std::vector<EdgeSet> exhaustion;  // nested, increasing
  LambdaGrid grid;
  double increment_eps = 0.05;
  int samples = 1;
  std::uint64_t seed = 1;
  double mesh_h = 1.0 / 32;
  int threads = 0;
  bool oracle_dense = false;
};

std::vector<IdsCurve> run_ids(const AlloyModel& model, const ConditionField& field,
                              const IdsParams& params);

// Deterministic potentials given as one constant per edge; nodal values
// follow the same dof conventions as potential_on_mesh.
std::vector<double> nodal_from_edge_constants(const Mesh& mesh,
                                              const std::vector<double>& per_edge);

// Fixture for the decoupling bound: two potentials differing only inside
// the subgraph over `tilde`; the shift of the full pair is compared with
// the boundary-degree term plus the shift of the Dirichlet-decoupled
// interior pair.
struct LemmaGraphFixture {
  const MetricGraph* graph = nullptr;
  const ConditionField* field = nullptr;
  EdgeSet tilde;
  std::vector<double> w1_edge;  // per-edge constants, size = edge count
  std::vector<double> w2_edge;
  LambdaGrid grid;
  double mesh_h = 1.0 / 32;
};

// Fixture for the volume bound: arbitrary bounded per-edge constant
// potentials on the whole graph.
struct LemmaEdgeFixture {
  const MetricGraph* graph = nullptr;
  const ConditionField* field = nullptr;
  std::vector<double> w1_edge;
  std::vector<double> w2_edge;
  LambdaGrid grid;
  double mesh_h = 1.0 / 32;
};

struct LemmaReport {
  std::vector<double> lambda;
  std::vector<int> xi;        // counting difference on the full graph
  std::vector<int> xi_inner;  // decoupled interior (graph fixture only)
  int boundary_term = 0;      // sum of parent degrees over boundary vertices
  double bound = 0.0;         // edge fixture: volume-term bound
  int max_abs_xi = 0;
  bool ok = false;
};

LemmaReport verify_lemma_graph(const LemmaGraphFixture& fx);
LemmaReport verify_lemma_edge(const LemmaEdgeFixture& fx);

// Least-squares slope of log(y) against log(x); xs and ys must be positive.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace qg
