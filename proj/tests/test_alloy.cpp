#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qg/alloy.hpp"
#include "qg/mesh.hpp"

using namespace qg;

namespace {

// Overlap fixture on a path: every site covers its own edge with height 1
// plus the neighboring edges with height `spill`, optionally stepping down
// past a breakpoint.
AlloyModel overlap_model(const MetricGraph& g, double spill, bool with_break,
                         DistributionSpec dist) {
  std::vector<SingleSitePotential> sites(static_cast<size_t>(g.edge_count()));
  for (int e = 0; e < g.edge_count(); ++e) {
    SingleSitePotential& s = sites[static_cast<size_t>(e)];
    s.site = e;
    s.profiles.push_back({e, {}, {1.0}});
    for (int nb : {e - 1, e + 1}) {
      if (nb < 0 || nb >= g.edge_count()) continue;
      if (with_break)
        s.profiles.push_back({nb, {0.5}, {spill, 0.5 * spill}});
      else
        s.profiles.push_back({nb, {}, {spill}});
    }
  }
  return AlloyModel::from_sites(g, std::move(sites), dist);
}

}  // namespace

TEST_CASE("distribution families: support and validation") {
  CHECK_THROWS_AS(DistributionSpec::uniform(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::power_law(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::power_law(1.5), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::two_point(0.0, 1.0, 1.5), std::invalid_argument);

  const MetricGraph g = generate_path(6, 1.0);
  const EdgeSet all = EdgeSet::all(g);

  const AlloyModel uni =
      AlloyModel::edge_indicators(g, 1.0, DistributionSpec::uniform(0.0, 1.0));
  const OmegaVector wu = sample_omega(uni, all, 11, 0);
  for (double w : wu.value) CHECK((w >= 0.0 && w < 1.0));

  const AlloyModel tp =
      AlloyModel::edge_indicators(g, 1.0, DistributionSpec::two_point(0.0, 1.0, 0.5));
  const OmegaVector wt = sample_omega(tp, all, 11, 0);
  for (double w : wt.value) CHECK((w == 0.0 || w == 1.0));

  const AlloyModel pl =
      AlloyModel::edge_indicators(g, 1.0, DistributionSpec::power_law(0.5));
  const OmegaVector wp = sample_omega(pl, all, 11, 0);
  for (double w : wp.value) CHECK((w >= 0.0 && w <= 1.0));
}

TEST_CASE("sampling is deterministic in (seed, index, edge)") {
  const MetricGraph g = generate_path(5, 1.0);
  const AlloyModel m =
      AlloyModel::edge_indicators(g, 1.0, DistributionSpec::uniform(0.0, 1.0));
  const EdgeSet all = EdgeSet::all(g);
  const OmegaVector a = sample_omega(m, all, 123, 7);
  const OmegaVector b = sample_omega(m, all, 123, 7);
  CHECK(a.value == b.value);
  const OmegaVector c = sample_omega(m, all, 123, 8);
  CHECK(a.value != c.value);
  // A subset draw agrees with the full draw on shared edges.
  const OmegaVector d = sample_omega(m, EdgeSet::of({1, 3}), 123, 7);
  CHECK(d.at(1) == a.at(1));
  CHECK(d.at(3) == a.at(3));
}

TEST_CASE("modulus of continuity closed forms") {
  CHECK(s_mu(DistributionSpec::uniform(0.0, 1.0), 0.1) == doctest::Approx(0.2));
  CHECK(s_mu(DistributionSpec::two_point(0.0, 1.0, 0.5), 0.2) == doctest::Approx(0.5));
  CHECK(s_mu(DistributionSpec::two_point(0.0, 1.0, 0.3), 0.2) == doctest::Approx(0.7));
  CHECK(s_mu(DistributionSpec::two_point(0.0, 1.0, 0.3), 0.5) == 1.0);
  CHECK(s_mu(DistributionSpec::uniform(0.0, 1.0), 3.0) == 1.0);
  CHECK_THROWS_AS(s_mu(DistributionSpec::uniform(0.0, 1.0), 0.0), std::invalid_argument);
}

TEST_CASE("power-law modulus against a grid-maximization oracle") {
  for (double alpha : {0.3, 0.5, 1.0}) {
    const DistributionSpec d = DistributionSpec::power_law(alpha);
    for (double eps : {0.02, 0.1, 0.3}) {
      // Oracle: numerically maximize the interval mass over a lambda grid.
      auto cdf = [&](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return std::pow(x, alpha);
      };
      double sup = 0.0;
      for (double l = -0.2; l <= 1.2; l += 1e-5)
        sup = std::max(sup, cdf(l + eps) - cdf(l - eps));
      CHECK(s_mu(d, eps) == doctest::Approx(sup).epsilon(1e-6));
    }
  }
}

TEST_CASE("modulus monotonicity and clamping") {
  const DistributionSpec specs[] = {DistributionSpec::uniform(-1.0, 3.0),
                                    DistributionSpec::two_point(0.0, 2.0, 0.25),
                                    DistributionSpec::power_law(0.5)};
  for (const DistributionSpec& d : specs) {
    double prev = 0.0;
    for (double eps = 0.01; eps < 4.0; eps *= 1.7) {
      const double s = s_mu(d, eps);
      CHECK(s >= prev);
      CHECK(s >= s_mu(d, eps / 2));
      CHECK((s >= 0.0 && s <= 1.0));
      prev = s;
    }
  }
  // Uniform: s * width == 2 eps exactly while the window fits (dyadic width).
  const DistributionSpec u = DistributionSpec::uniform(-0.5, 1.5);
  for (double eps : {0.125, 0.25, 0.5}) CHECK(s_mu(u, eps) * 2.0 == 2.0 * eps);
}

TEST_CASE("covering: indicator sites partition") {
  const MetricGraph g = generate_path(6, 1.0);
  const AlloyModel m =
      AlloyModel::edge_indicators(g, 1.0, DistributionSpec::uniform(0.0, 1.0));
  const EdgeSet lam = EdgeSet::of({1, 2, 3});
  const CoveringResult cov = check_covering(m, lam);
  CHECK(cov.kappa == 1.0);
  CHECK(cov.active_sites.ids() == lam.ids());
}

TEST_CASE("covering fails with a dead site") {
  const MetricGraph g = generate_path(4, 1.0);
  std::vector<SingleSitePotential> sites(4);
  for (int e = 0; e < 4; ++e) {
    sites[static_cast<size_t>(e)].site = e;
    const double amp = (e == 2) ? 0.0 : 1.0;
    sites[static_cast<size_t>(e)].profiles = {{e, {}, {amp}}};
  }
  const AlloyModel m =
      AlloyModel::from_sites(g, std::move(sites), DistributionSpec::uniform(0.0, 1.0));
  const CoveringResult cov = check_covering(m, EdgeSet::all(g));
  CHECK(cov.kappa == 0.0);
}

TEST_CASE("covering with overlapping breakpoint profiles") {
  const MetricGraph g = generate_path(8, 1.0);
  const AlloyModel m = overlap_model(g, 0.5, true, DistributionSpec::uniform(0.0, 1.0));
  const CoveringResult cov = check_covering(m, EdgeSet::all(g));
  CHECK(cov.active_sites.size() == 8);

  // Oracle: dense sampling of the site sum along every edge.
  double inf = std::numeric_limits<double>::infinity();
  for (int f = 0; f < 8; ++f) {
    for (double x = 0.0; x <= 1.0; x += 1e-3) {
      double sum = 0.0;
      for (const SingleSitePotential& s : m.sites) {
        const EdgeProfile* p = s.profile_on(f);
        if (p) sum += p->value_at(std::min(x, 1.0));
      }
      inf = std::min(inf, sum);
    }
  }
  CHECK(cov.kappa == doctest::Approx(inf).epsilon(1e-12));
  CHECK(cov.kappa >= 1.0);
}

TEST_CASE("profile validation") {
  const MetricGraph g = generate_path(2, 1.0);
  std::vector<SingleSitePotential> bad(2);
  bad[0].site = 0;
  bad[0].profiles = {{0, {}, {-1.0}}};  // negative
  bad[1].site = 1;
  bad[1].profiles = {{1, {}, {1.0}}};
  CHECK_THROWS_AS(
      AlloyModel::from_sites(g, std::move(bad), DistributionSpec::uniform(0.0, 1.0)),
      std::invalid_argument);

  std::vector<SingleSitePotential> bad2(2);
  bad2[0].site = 0;
  bad2[0].profiles = {{0, {1.5}, {1.0, 1.0}}};  // breakpoint past the edge length
  bad2[1].site = 1;
  CHECK_THROWS_AS(
      AlloyModel::from_sites(g, std::move(bad2), DistributionSpec::uniform(0.0, 1.0)),
      std::invalid_argument);
}

TEST_CASE("summability constants for indicator sites") {
  const MetricGraph g = generate_path(8, 1.0);
  const EdgeSet all = EdgeSet::all(g);
  {
    const AlloyModel m =
        AlloyModel::edge_indicators(g, 1.0, DistributionSpec::uniform(0.0, 1.0));
    const SummabilityConstants c =
        summability_constants(m, all, check_covering(m, all).active_sites);
    CHECK(c.c3 == 1.0);
    CHECK(c.c2 == 1.0);
    // End edges contribute one boundary vertex of parent degree 2, interior
    // edges two of them.
    CHECK(c.c1 == doctest::Approx((6 * 4 + 2 * 2) / 8.0));
  }
  {
    const AlloyModel m =
        AlloyModel::edge_indicators(g, 4.0, DistributionSpec::uniform(0.0, 1.0));
    const SummabilityConstants c =
        summability_constants(m, all, check_covering(m, all).active_sites);
    CHECK(c.c2 == 2.0);  // sqrt(4) * vol 1
  }
}

TEST_CASE("summability constants for the overlap fixture") {
  const MetricGraph g = generate_path(8, 1.0);
  const AlloyModel m = overlap_model(g, 0.5, false, DistributionSpec::uniform(0.0, 1.0));
  const EdgeSet all = EdgeSet::all(g);
  const CoveringResult cov = check_covering(m, all);
  const SummabilityConstants c = summability_constants(m, all, cov.active_sites);

  // Oracle: direct enumeration over sites.
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  for (const SingleSitePotential& s : m.sites) {
    const Subgraph sub = restrict_graph(g, EdgeSet::of(s.support));
    for (VertexId v : sub.boundary) c1 += g.degree(v);
    c2 += std::sqrt(s.sup_norm) * volume(sub);
    c3 += static_cast<double>(s.support.size());
  }
  CHECK(c.c1 == doctest::Approx(c1 / 8.0));
  CHECK(c.c2 == doctest::Approx(c2 / 8.0));
  CHECK(c.c3 == doctest::Approx(c3 / 8.0));
}

TEST_CASE("potential on mesh") {
  const MetricGraph g = generate_path(3, 1.0);
  const ConditionField field = ConditionField::uniform(g, ConditionTag::Kirchhoff);
  const Subgraph sub = restrict_graph(g, EdgeSet::all(g));
  const ConditionField induced = induce_on_subgraph(field, sub);
  const Mesh mesh = Mesh::build(sub, induced, 0.25);
  const AlloyModel m = overlap_model(g, 0.5, true, DistributionSpec::uniform(0.0, 1.0));
  const EdgeSet all = EdgeSet::all(g);

  OmegaVector zero;
  zero.sites = all.ids();
  zero.value.assign(3, 0.0);
  for (double v : potential_on_mesh(m, zero, sub, mesh)) CHECK(v == 0.0);

  OmegaVector w;
  w.sites = all.ids();
  w.value = {1.0, 2.0, 0.5};
  const std::vector<double> pot = potential_on_mesh(m, w, sub, mesh);

  // Independent pointwise evaluator over the dof back-map.
  for (int i = 0; i < mesh.dof_count(); ++i) {
    const DofRef& r = mesh.dof(i);
    double x = 0.0;
    if (r.kind == DofRef::Kind::EdgeInterior)
      x = r.node * mesh.spacing(r.edge);
    else
      x = r.end == 0 ? 0.0 : mesh.edge_length(r.edge);
    double expect = 0.0;
    for (size_t si = 0; si < w.sites.size(); ++si) {
      const EdgeProfile* p =
          m.sites[static_cast<size_t>(w.sites[si])].profile_on(r.edge);
      if (p) expect += w.value[si] * p->value_at(x);
    }
    CHECK(pot[static_cast<size_t>(i)] == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("potential on mesh: single edge constant") {
  const MetricGraph g = generate_path(1, 1.0);
  ConditionField field;
  field.set(0, dirichlet(1));
  field.set(1, dirichlet(1));
  const Subgraph sub = restrict_graph(g, EdgeSet::all(g));
  const Mesh mesh = Mesh::build(sub, induce_on_subgraph(field, sub), 0.125);
  const AlloyModel m =
      AlloyModel::edge_indicators(g, 1.0, DistributionSpec::uniform(0.0, 1.0));
  OmegaVector w;
  w.sites = {0};
  w.value = {3.0};
  for (double v : potential_on_mesh(m, w, sub, mesh)) CHECK(v == 3.0);
}

TEST_CASE("potential is linear in the couplings (dyadic data, exact)") {
  const MetricGraph g = generate_path(4, 1.0);
  const ConditionField field = ConditionField::uniform(g, ConditionTag::Kirchhoff);
  const Subgraph sub = restrict_graph(g, EdgeSet::all(g));
  const Mesh mesh = Mesh::build(sub, induce_on_subgraph(field, sub), 0.25);
  const AlloyModel m = overlap_model(g, 0.5, false, DistributionSpec::uniform(0.0, 1.0));
  OmegaVector w1, w2, w12;
  w1.sites = w2.sites = w12.sites = EdgeSet::all(g).ids();
  w1.value = {0.25, 1.5, 0.0, 2.0};
  w2.value = {1.0, 0.125, 3.0, 0.5};
  w12.value.resize(4);
  for (size_t i = 0; i < 4; ++i) w12.value[i] = w1.value[i] + w2.value[i];

  const std::vector<double> a = potential_on_mesh(m, w1, sub, mesh);
  const std::vector<double> b = potential_on_mesh(m, w2, sub, mesh);
  const std::vector<double> ab = potential_on_mesh(m, w12, sub, mesh);
  for (size_t i = 0; i < a.size(); ++i) CHECK(ab[i] == a[i] + b[i]);
}
