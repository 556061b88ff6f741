#include "qg/alloy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qg/rng.hpp"

namespace qg {

double EdgeProfile::value_at(double x) const {
  const size_t idx = static_cast<size_t>(
      std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
  return values[idx];
}

bool EdgeProfile::is_zero() const {
  for (double v : values)
    if (v != 0.0) return false;
  return true;
}

double EdgeProfile::max_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

const EdgeProfile* SingleSitePotential::profile_on(EdgeId e) const {
  for (const EdgeProfile& p : profiles)
    if (p.edge == e) return &p;
  return nullptr;
}

DistributionSpec DistributionSpec::uniform(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform distribution needs a < b");
  DistributionSpec d;
  d.family = Family::Uniform;
  d.a = a;
  d.b = b;
  return d;
}

DistributionSpec DistributionSpec::two_point(double a, double b, double p) {
  if (!(a < b)) throw std::invalid_argument("two-point distribution needs a < b");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("two-point mass p must be in [0,1]");
  DistributionSpec d;
  d.family = Family::TwoPoint;
  d.a = a;
  d.b = b;
  d.p = p;
  return d;
}

DistributionSpec DistributionSpec::power_law(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("power-law exponent must be in (0,1]");
  DistributionSpec d;
  d.family = Family::PowerLaw;
  d.a = 0.0;
  d.b = 1.0;
  d.alpha = alpha;
  return d;
}

double DistributionSpec::support_lo() const { return a; }
double DistributionSpec::support_hi() const { return b; }

double DistributionSpec::sample(double u01) const {
  switch (family) {
    case Family::Uniform: return a + (b - a) * u01;
    case Family::TwoPoint: return u01 < p ? b : a;
    case Family::PowerLaw: return std::pow(u01, 1.0 / alpha);
  }
  throw std::logic_error("bad distribution family");
}

double s_mu(const DistributionSpec& dist, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("modulus argument eps must be positive");
  switch (dist.family) {
    case DistributionSpec::Family::Uniform:
      return std::min(1.0, 2.0 * eps / (dist.b - dist.a));
    case DistributionSpec::Family::TwoPoint:
      if (2.0 * eps >= dist.b - dist.a) return 1.0;
      return std::max(dist.p, 1.0 - dist.p);
    case DistributionSpec::Family::PowerLaw:
      // Mass concentrates at 0: the sup interval is [0, 2 eps].
      return std::min(1.0, std::pow(2.0 * eps, dist.alpha));
  }
  throw std::logic_error("bad distribution family");
}

namespace {

void validate_profile(const MetricGraph& g, const EdgeProfile& p) {
  if (p.edge < 0 || p.edge >= g.edge_count())
    throw std::invalid_argument("profile references unknown edge " + std::to_string(p.edge));
  const double l = g.edge(p.edge).length;
  if (p.values.size() != p.breaks.size() + 1)
    throw std::invalid_argument("profile needs breaks.size()+1 values");
  double prev = 0.0;
  for (double b : p.breaks) {
    if (!(b > prev && b < l))
      throw std::invalid_argument("profile breakpoints must increase inside (0, length)");
    prev = b;
  }
  for (double v : p.values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("single-site potentials must be nonnegative and finite");
}

}  // namespace

AlloyModel AlloyModel::from_sites(const MetricGraph& g,
                                  std::vector<SingleSitePotential> sites,
                                  DistributionSpec dist) {
  if (static_cast<int>(sites.size()) != g.edge_count())
    throw std::invalid_argument("alloy model needs one site per edge");
  for (int e = 0; e < g.edge_count(); ++e) {
    SingleSitePotential& s = sites[static_cast<size_t>(e)];
    if (s.site != e) throw std::invalid_argument("sites must be indexed by edge id");
    std::sort(s.profiles.begin(), s.profiles.end(),
              [](const EdgeProfile& a, const EdgeProfile& b) { return a.edge < b.edge; });
    s.support.clear();
    s.sup_norm = 0.0;
    EdgeId last = -1;
    for (const EdgeProfile& p : s.profiles) {
      if (p.edge == last)
        throw std::invalid_argument("duplicate profile edge in one site");
      last = p.edge;
      validate_profile(g, p);
      if (!p.is_zero()) s.support.push_back(p.edge);
      s.sup_norm = std::max(s.sup_norm, p.max_value());
    }
  }
  AlloyModel m;
  m.graph = &g;
  m.sites = std::move(sites);
  m.dist = dist;
  return m;
}

AlloyModel AlloyModel::edge_indicators(const MetricGraph& g, double amplitude,
                                       DistributionSpec dist) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw std::invalid_argument("indicator amplitude must be nonnegative and finite");
  std::vector<SingleSitePotential> sites(static_cast<size_t>(g.edge_count()));
  for (int e = 0; e < g.edge_count(); ++e) {
    sites[static_cast<size_t>(e)].site = e;
    sites[static_cast<size_t>(e)].profiles = {{e, {}, {amplitude}}};
  }
  return from_sites(g, std::move(sites), dist);
}

double OmegaVector::at(EdgeId e) const {
  auto it = std::lower_bound(sites.begin(), sites.end(), e);
  if (it == sites.end() || *it != e)
    throw std::out_of_range("no coupling for site " + std::to_string(e));
  return value[static_cast<size_t>(it - sites.begin())];
}

OmegaVector sample_omega(const AlloyModel& model, const EdgeSet& active_sites,
                         std::uint64_t seed, std::uint64_t sample_index) {
  OmegaVector out;
  out.sites = active_sites.ids();
  out.value.reserve(out.sites.size());
  for (EdgeId e : out.sites)
    out.value.push_back(
        model.dist.sample(counter_u01(seed, sample_index, static_cast<std::uint64_t>(e))));
  return out;
}

CoveringResult check_covering(const AlloyModel& model, const EdgeSet& lambda) {
  const MetricGraph& g = *model.graph;
  for (EdgeId e : lambda)
    if (e >= g.edge_count()) throw std::invalid_argument("edge set outside the model graph");

  std::vector<EdgeId> active;
  for (const SingleSitePotential& s : model.sites) {
    bool meets = false;
    for (EdgeId f : s.support)
      if (lambda.contains(f)) { meets = true; break; }
    if (meets) active.push_back(s.site);
  }

  CoveringResult res;
  if (active.empty()) return res;  // kappa 0, covering fails
  res.has_sites = true;
  res.active_sites = EdgeSet::of(active);

  // Exact essential infimum of the site sum over the subgraph: scan the
  // merged breakpoint partition edge by edge.
  double kappa = std::numeric_limits<double>::infinity();
  for (EdgeId f : lambda) {
    std::vector<const EdgeProfile*> parts;
    for (EdgeId s : res.active_sites) {
      const EdgeProfile* p = model.sites[static_cast<size_t>(s)].profile_on(f);
      if (p && !p->is_zero()) parts.push_back(p);
    }
    if (parts.empty()) { kappa = 0.0; continue; }
    std::vector<double> cuts{0.0};
    for (const EdgeProfile* p : parts)
      cuts.insert(cuts.end(), p->breaks.begin(), p->breaks.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (double x : cuts) {
      double sum = 0.0;
      for (const EdgeProfile* p : parts) sum += p->value_at(x);
      kappa = std::min(kappa, sum);
    }
  }
  res.kappa = std::isfinite(kappa) ? kappa : 0.0;
  return res;
}

SummabilityConstants summability_constants(const AlloyModel& model,
                                           const EdgeSet& lambda,
                                           const EdgeSet& active_sites) {
  const MetricGraph& g = *model.graph;
  double deg_sum = 0.0, l2_sum = 0.0, size_sum = 0.0;
  for (EdgeId e : active_sites) {
    const SingleSitePotential& s = model.sites[static_cast<size_t>(e)];
    if (s.support.empty()) continue;
    const Subgraph sub_e = restrict_graph(g, EdgeSet::of(s.support));
    double degs = 0.0;
    for (VertexId v : sub_e.boundary) degs += g.degree(v);
    deg_sum += degs;
    l2_sum += std::sqrt(s.sup_norm) * volume(sub_e);
    size_sum += static_cast<double>(s.support.size());
  }
  const double inv = 1.0 / lambda.size();
  return {deg_sum * inv, l2_sum * inv, size_sum * inv};
}

std::vector<double> potential_on_mesh(const AlloyModel& model, const OmegaVector& omega,
                                      const Subgraph& sub, const Mesh& mesh) {
  for (EdgeId f : mesh.edge_ids())
    if (!sub.edges.contains(f))
      throw std::invalid_argument("mesh does not match the subgraph");

  std::vector<double> v(static_cast<size_t>(mesh.dof_count()), 0.0);
  // Site-major accumulation in ascending site order keeps the summation
  // order fixed.
  for (size_t si = 0; si < omega.sites.size(); ++si) {
    const double w = omega.value[si];
    if (w == 0.0) continue;
    const SingleSitePotential& s = model.sites[static_cast<size_t>(omega.sites[si])];
    for (const EdgeProfile& prof : s.profiles) {
      if (prof.is_zero()) continue;
      const EdgeId f = prof.edge;
      if (!sub.edges.contains(f)) continue;
      const double h = mesh.spacing(f);
      const double len = mesh.edge_length(f);
      const int nf = mesh.intervals(f);
      for (int k = 1; k < nf; ++k)
        v[static_cast<size_t>(mesh.interior_dof(f, k))] += w * prof.value_at(k * h);
      for (int end = 0; end < 2; ++end) {
        const int d = mesh.end_dof(f, end);
        if (d < 0) continue;
        const DofRef& r = mesh.dof(d);
        // A shared vertex dof takes its value from its representative end
        // only; slot dofs belong to exactly one end anyway.
        if (r.edge != f || r.end != end) continue;
        v[static_cast<size_t>(d)] += w * prof.value_at(end == 0 ? 0.0 : len);
      }
    }
  }
  return v;
}

}  // namespace qg
