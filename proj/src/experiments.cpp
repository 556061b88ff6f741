#include "qg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qg {

std::vector<double> LambdaGrid::points() const {
  if (count < 1) throw std::invalid_argument("lambda grid needs at least one point");
  if (count == 1) return {lo};
  if (!(hi > lo)) throw std::invalid_argument("lambda grid needs hi > lo");
  std::vector<double> p(static_cast<size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) p[static_cast<size_t>(i)] = lo + step * i;
  return p;
}

namespace {

// Runs fn(0..jobs-1) on up to `threads` workers; results must be written
// to per-job slots so the outcome is independent of scheduling.
void parallel_jobs(int jobs, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, jobs));
  if (threads == 1) {
    for (int j = 0; j < jobs; ++j) fn(j);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int j = next.fetch_add(1);
      if (j >= jobs) return;
      try {
        fn(j);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double std_error_of(const std::vector<double>& xs, double mean) {
  const size_t n = xs.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : xs) s += (x - mean) * (x - mean);
  return std::sqrt(s / (static_cast<double>(n) * static_cast<double>(n - 1)));
}

}  // namespace

WegnerReport run_wegner(const AlloyModel& model, const ConditionField& field,
                        const WegnerParams& params) {
  const MetricGraph& g = *model.graph;
  field.check_against(g);
  if (params.edge_sets.empty()) throw std::invalid_argument("no edge sets given");
  if (params.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (params.epsilons.empty()) throw std::invalid_argument("no interval widths given");

  WegnerReport report;
  for (double eps : params.epsilons) {
    if (!(eps > 0.0)) throw std::invalid_argument("interval half-width must be positive");
    if (eps > 0.5)
      report.warnings.push_back("eps=" + std::to_string(eps) +
                                " exceeds 1/2; the bound is stated for eps <= 1/2");
  }

  const std::vector<double> grid = params.grid.points();
  const auto t_start = std::chrono::steady_clock::now();
  const CountMethod method =
      params.oracle_dense ? CountMethod::DenseOracle : CountMethod::Auto;

  for (const EdgeSet& lambda_set : params.edge_sets) {
    const Subgraph sub = restrict_graph(g, lambda_set);
    const CoveringResult cov = check_covering(model, lambda_set);
    if (!(cov.kappa > 0.0))
      throw std::runtime_error("covering fails on an edge set of size " +
                               std::to_string(lambda_set.size()) +
                               " (kappa=" + std::to_string(cov.kappa) + ")");
    const SummabilityConstants consts =
        summability_constants(model, lambda_set, cov.active_sites);
    const ConditionField induced = induce_on_subgraph(field, sub);
    const Mesh mesh = Mesh::build(sub, induced, params.mesh_h);

    WegnerSetInfo info;
    info.n_edges = lambda_set.size();
    info.dofs = mesh.dof_count();
    info.kappa = cov.kappa;
    info.consts = consts;
    info.proof_constant = consts.c1 + consts.c2 / std::numbers::pi + 5.0 * consts.c3;
    report.sets.push_back(info);

    const size_t n_cells = params.epsilons.size() * grid.size();
    std::vector<std::vector<int>> counts(
        static_cast<size_t>(params.samples), std::vector<int>(n_cells, 0));

    parallel_jobs(params.samples, params.threads, [&](int s) {
      if (params.wall_clock_limit_s > 0.0) {
        const std::chrono::duration<double> used =
            std::chrono::steady_clock::now() - t_start;
        if (used.count() > params.wall_clock_limit_s)
          throw std::runtime_error("wall-clock budget exceeded");
      }
      const OmegaVector omega =
          sample_omega(model, cov.active_sites, params.seed,
                       static_cast<std::uint64_t>(s));
      const std::vector<double> pot = potential_on_mesh(model, omega, sub, mesh);
      const Pencil pencil = assemble(sub, induced, pot, mesh);
      std::vector<int>& row = counts[static_cast<size_t>(s)];
      if (method == CountMethod::DenseOracle) {
        const std::vector<double> eigs = eigenvalues_dense(pencil);
        size_t c = 0;
        for (double eps : params.epsilons)
          for (double l : grid) row[c++] = count_interval_sorted(eigs, l, eps);
      } else {
        size_t c = 0;
        for (double eps : params.epsilons)
          for (double l : grid) row[c++] = count_interval(pencil, l, eps, method);
      }
    });

    size_t c = 0;
    for (double eps : params.epsilons) {
      WegnerSummary summary;
      summary.n_edges = lambda_set.size();
      summary.eps = eps;
      const double s4 = s_mu(model.dist, 4.0 * eps / cov.kappa);
      for (double l : grid) {
        std::vector<double> xs(static_cast<size_t>(params.samples));
        for (int s = 0; s < params.samples; ++s)
          xs[static_cast<size_t>(s)] = counts[static_cast<size_t>(s)][c];
        ++c;
        WegnerCell cell;
        cell.lambda = l;
        cell.eps = eps;
        cell.n_edges = lambda_set.size();
        cell.samples = params.samples;
        cell.mean = mean_of(xs);
        cell.std_error = std_error_of(xs, cell.mean);
        cell.s_mu4 = s4;
        cell.bound = s4 * lambda_set.size();
        cell.ratio = cell.bound > 0.0 ? cell.mean / cell.bound : 0.0;
        summary.max_mean = std::max(summary.max_mean, cell.mean);
        summary.max_ratio = std::max(summary.max_ratio, cell.ratio);
        report.cells.push_back(cell);
      }
      report.summaries.push_back(summary);
    }
  }
  return report;
}

std::vector<IdsCurve> run_ids(const AlloyModel& model, const ConditionField& field,
                              const IdsParams& params) {
  const MetricGraph& g = *model.graph;
  field.check_against(g);
  if (params.exhaustion.empty()) throw std::invalid_argument("empty exhaustion");
  if (params.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(params.increment_eps > 0.0))
    throw std::invalid_argument("increment width must be positive");
  for (size_t i = 0; i + 1 < params.exhaustion.size(); ++i)
    if (!params.exhaustion[i].subset_of(params.exhaustion[i + 1]))
      throw std::invalid_argument("exhaustion is not nested");

  const std::vector<double> grid = params.grid.points();
  const CountMethod method =
      params.oracle_dense ? CountMethod::DenseOracle : CountMethod::Auto;
  std::vector<IdsCurve> curves;

  for (size_t step = 0; step < params.exhaustion.size(); ++step) {
    const EdgeSet& lambda_set = params.exhaustion[step];
    const Subgraph sub = restrict_graph(g, lambda_set);
    const CoveringResult cov = check_covering(model, lambda_set);
    const ConditionField induced = induce_on_subgraph(field, sub);
    const Mesh mesh = Mesh::build(sub, induced, params.mesh_h);
    const double vol = volume(sub);

    std::vector<std::vector<double>> values(
        static_cast<size_t>(params.samples),
        std::vector<double>(2 * grid.size(), 0.0));

    parallel_jobs(params.samples, params.threads, [&](int s) {
      const OmegaVector omega =
          sample_omega(model, cov.active_sites, params.seed,
                       static_cast<std::uint64_t>(s));
      const std::vector<double> pot = potential_on_mesh(model, omega, sub, mesh);
      const Pencil pencil = assemble(sub, induced, pot, mesh);
      std::vector<double>& row = values[static_cast<size_t>(s)];
      if (method == CountMethod::DenseOracle) {
        const std::vector<double> eigs = eigenvalues_dense(pencil);
        for (size_t k = 0; k < grid.size(); ++k) {
          row[k] = count_below_sorted(eigs, grid[k]);
          row[grid.size() + k] =
              count_below_sorted(eigs, grid[k] + params.increment_eps) - row[k];
        }
      } else {
        for (size_t k = 0; k < grid.size(); ++k) {
          row[k] = count_below(pencil, grid[k], method);
          row[grid.size() + k] =
              count_below(pencil, grid[k] + params.increment_eps, method) - row[k];
        }
      }
    });

    IdsCurve curve;
    curve.step = static_cast<int>(step + 1);
    curve.n_edges = lambda_set.size();
    curve.vol = vol;
    curve.lambda = grid;
    curve.value.resize(grid.size());
    curve.std_error.resize(grid.size());
    curve.increment.resize(grid.size());
    for (size_t k = 0; k < grid.size(); ++k) {
      std::vector<double> xs(static_cast<size_t>(params.samples));
      std::vector<double> incs(static_cast<size_t>(params.samples));
      for (int s = 0; s < params.samples; ++s) {
        xs[static_cast<size_t>(s)] = values[static_cast<size_t>(s)][k] / vol;
        incs[static_cast<size_t>(s)] =
            values[static_cast<size_t>(s)][grid.size() + k] / vol;
      }
      curve.value[k] = mean_of(xs);
      curve.std_error[k] = std_error_of(xs, curve.value[k]);
      curve.increment[k] = mean_of(incs);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<double> nodal_from_edge_constants(const Mesh& mesh,
                                              const std::vector<double>& per_edge) {
  std::vector<double> v(static_cast<size_t>(mesh.dof_count()), 0.0);
  for (int i = 0; i < mesh.dof_count(); ++i) {
    const DofRef& r = mesh.dof(i);
    v[static_cast<size_t>(i)] = per_edge.at(static_cast<size_t>(r.edge));
  }
  return v;
}

namespace {

void check_lemma_potentials(const MetricGraph& g, const std::vector<double>& w1,
                            const std::vector<double>& w2) {
  if (static_cast<int>(w1.size()) != g.edge_count() ||
      static_cast<int>(w2.size()) != g.edge_count())
    throw std::invalid_argument("per-edge potentials must cover every edge");
  for (double v : w1)
    if (!std::isfinite(v)) throw std::invalid_argument("potential must be bounded");
  for (double v : w2)
    if (!std::isfinite(v)) throw std::invalid_argument("potential must be bounded");
}

double max_abs(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

LemmaReport verify_lemma_graph(const LemmaGraphFixture& fx) {
  const MetricGraph& g = *fx.graph;
  check_lemma_potentials(g, fx.w1_edge, fx.w2_edge);
  for (int e = 0; e < g.edge_count(); ++e)
    if (!fx.tilde.contains(e) &&
        fx.w1_edge[static_cast<size_t>(e)] != fx.w2_edge[static_cast<size_t>(e)])
      throw std::invalid_argument(
          "potential difference must be supported inside the subgraph");

  const std::vector<double> grid = fx.grid.points();
  LemmaReport rep;
  rep.lambda = grid;

  const Subgraph full = restrict_graph(g, EdgeSet::all(g));
  const ConditionField induced_full = induce_on_subgraph(*fx.field, full);
  const Mesh mesh_full = Mesh::build(full, induced_full, fx.mesh_h);
  const Pencil p1 = assemble(full, induced_full,
                             nodal_from_edge_constants(mesh_full, fx.w1_edge), mesh_full);
  const Pencil p2 = assemble(full, induced_full,
                             nodal_from_edge_constants(mesh_full, fx.w2_edge), mesh_full);
  rep.xi = ssf(p1, p2, grid).xi;

  const Subgraph inner = restrict_graph(g, fx.tilde);
  const ConditionField induced_inner = induce_on_subgraph(*fx.field, inner);
  const Mesh mesh_inner = Mesh::build(inner, induced_inner, fx.mesh_h);
  const Pencil h1 = assemble(inner, induced_inner,
                             nodal_from_edge_constants(mesh_inner, fx.w1_edge), mesh_inner);
  const Pencil h2 = assemble(inner, induced_inner,
                             nodal_from_edge_constants(mesh_inner, fx.w2_edge), mesh_inner);
  rep.xi_inner = ssf(h1, h2, grid).xi;

  int degs = 0;
  for (VertexId v : inner.boundary) degs += g.degree(v);
  rep.boundary_term = degs;

  rep.ok = true;
  for (size_t k = 0; k < grid.size(); ++k) {
    rep.max_abs_xi = std::max(rep.max_abs_xi, std::abs(rep.xi[k]));
    if (std::abs(rep.xi[k]) > rep.boundary_term + std::abs(rep.xi_inner[k]))
      rep.ok = false;
  }
  return rep;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("slope needs at least two points");
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw std::invalid_argument("log-log slope needs positive data");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  const double mx = mean_of(lx), my = mean_of(ly);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

LemmaReport verify_lemma_edge(const LemmaEdgeFixture& fx) {
  const MetricGraph& g = *fx.graph;
  check_lemma_potentials(g, fx.w1_edge, fx.w2_edge);

  const std::vector<double> grid = fx.grid.points();
  LemmaReport rep;
  rep.lambda = grid;

  const Subgraph full = restrict_graph(g, EdgeSet::all(g));
  const ConditionField induced = induce_on_subgraph(*fx.field, full);
  const Mesh mesh = Mesh::build(full, induced, fx.mesh_h);
  const Pencil p1 =
      assemble(full, induced, nodal_from_edge_constants(mesh, fx.w1_edge), mesh);
  const Pencil p2 =
      assemble(full, induced, nodal_from_edge_constants(mesh, fx.w2_edge), mesh);
  rep.xi = ssf(p1, p2, grid).xi;

  rep.bound = (std::sqrt(max_abs(fx.w1_edge)) + std::sqrt(max_abs(fx.w2_edge))) *
                  g.volume() / std::numbers::pi +
              5.0 * g.edge_count();
  rep.ok = true;
  for (int x : rep.xi) {
    rep.max_abs_xi = std::max(rep.max_abs_xi, std::abs(x));
    if (std::abs(x) > rep.bound) rep.ok = false;
  }
  return rep;
}

}  // namespace qg
