#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qg/assembly.hpp"
#include "qg/spectral.hpp"

using namespace qg;

namespace {

BandMatrix diag_band(const std::vector<double>& d) {
  BandMatrix a(static_cast<int>(d.size()), 0);
  for (int i = 0; i < a.n(); ++i) a.at(i, i) = d[static_cast<size_t>(i)];
  return a;
}

std::vector<double> ones(int n) { return std::vector<double>(static_cast<size_t>(n), 1.0); }

BandMatrix random_band(std::mt19937_64& rng, int n, int kd) {
  std::normal_distribution<double> dist;
  BandMatrix a(n, kd);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r <= std::min(kd, n - 1 - j); ++r) a.col(j)[r] = dist(rng);
  return a;
}

std::vector<double> random_mass(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> dist(0.2, 3.0);
  std::vector<double> m(static_cast<size_t>(n));
  for (double& x : m) x = dist(rng);
  return m;
}

Pencil dirichlet_edge_pencil(double l, double h, double constant_potential = 0.0) {
  const MetricGraph g = generate_path(1, l);
  ConditionField field;
  field.set(0, dirichlet(1));
  field.set(1, dirichlet(1));
  const Subgraph sub = restrict_graph(g, EdgeSet::all(g));
  const ConditionField induced = induce_on_subgraph(field, sub);
  const Mesh mesh = Mesh::build(sub, induced, h);
  return assemble(sub, induced,
                  std::vector<double>(static_cast<size_t>(mesh.dof_count()),
                                      constant_potential),
                  mesh);
}

}  // namespace

TEST_CASE("inertia of a diagonal pencil") {
  const BandMatrix k = diag_band({-1.0, 2.0, 5.0});
  CHECK(count_below(k, ones(3), 0.0) == 1);
  CHECK(count_below(k, ones(3), 3.0) == 2);
  CHECK(count_below(k, ones(3), 10.0) == 3);
  CHECK(count_below(k, ones(3), -5.0) == 0);
}

TEST_CASE("dense eigenvalues: closed forms") {
  CHECK(eigenvalues_dense(diag_band({3.0, 1.0, 2.0}), ones(3)) ==
        std::vector<double>{1.0, 2.0, 3.0});

  BandMatrix a(2, 1);
  a.at(0, 0) = 2.0;
  a.at(1, 1) = 2.0;
  a.at(1, 0) = -1.0;
  const std::vector<double> e = eigenvalues_dense(a, ones(2));
  CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(3.0).epsilon(1e-14));

  const Pencil p = dirichlet_edge_pencil(std::numbers::pi, std::numbers::pi / 8);
  const double h = p.mesh.spacing(0);
  const std::vector<double> eigs = eigenvalues_dense(p);
  for (size_t k = 0; k < eigs.size(); ++k) {
    const double s = std::sin((static_cast<double>(k) + 1) * h / 2.0);
    CHECK(std::fabs(eigs[k] - 4.0 / (h * h) * s * s) < 1e-9);
  }
}

TEST_CASE("dense eigensolver refuses past the cap") {
  const BandMatrix a = diag_band({1, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(eigenvalues_dense(a, ones(6), 5), std::invalid_argument);
}

TEST_CASE("inertia equals the dense oracle on random pencils") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(5, 60);
  std::uniform_real_distribution<double> shift(-3.0, 6.0);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = size(rng);
    const bool narrow = trial % 2 == 0;
    const int kd = narrow ? 1 + static_cast<int>(rng() % 5) : n - 1;
    const BandMatrix k = random_band(rng, n, std::min(kd, n - 1));
    const std::vector<double> m = random_mass(rng, n);
    const std::vector<double> eigs = eigenvalues_dense(k, m);
    for (double t : {-1.0, 0.0, 1.0, shift(rng)}) {
      const int oracle = count_below_sorted(eigs, t);
      CHECK(count_below(k, m, t, CountMethod::Auto) == oracle);
      CHECK(count_below(k, m, t, CountMethod::DenseBK) == oracle);
      if (narrow) CHECK(count_below(k, m, t, CountMethod::BandedLdlt) == oracle);
      ++checked;
    }
  }
  CHECK(checked >= 400);
}

TEST_CASE("interval counts") {
  const BandMatrix k = diag_band({0.0, 1.0, 2.0});
  CHECK(count_interval(k, ones(3), 1.0, 0.5) == 1);
  CHECK(count_interval(k, ones(3), 1.0, 1.0) == 3);  // closed endpoints included

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 8 + static_cast<int>(rng() % 40);
    const BandMatrix kk = random_band(rng, n, (trial % 2) ? n - 1 : 2);
    const std::vector<double> m = random_mass(rng, n);
    const std::vector<double> eigs = eigenvalues_dense(kk, m);
    std::uniform_real_distribution<double> lam(-2.0, 4.0);
    const double l = lam(rng);
    const double eps = 0.1 + 0.4 * std::uniform_real_distribution<double>()(rng);
    CHECK(count_interval(kk, m, l, eps) == count_interval_sorted(eigs, l, eps));
  }
}

TEST_CASE("single-edge pencil counts at a spectral window") {
  const Pencil p = dirichlet_edge_pencil(std::numbers::pi, std::numbers::pi / 64);
  // Discrete eigenvalues sit near 1, 4, 9, ...; below 4.5 there are two.
  CHECK(count_below(p, 4.5) == 2);
  CHECK(count_interval(p, 2.5, 2.0) == 2);
}

TEST_CASE("an exact eigenvalue hit resolves by the downward nudge") {
  const BandMatrix k = diag_band({1.0, 2.0, 3.0});
  // t sits exactly on the middle eigenvalue; strict below-count is 1.
  CHECK(count_below(k, ones(3), 2.0) == 1);
  // Closed-interval semantics keep both endpoints.
  CHECK(count_interval(k, ones(3), 2.0, 1.0) == 3);
  // Identity pencil: every eigenvalue equals 1.
  const BandMatrix id = diag_band({1.0, 1.0, 1.0, 1.0});
  CHECK(count_below(id, ones(4), 1.0) == 0);
  CHECK(count_interval(id, ones(4), 1.0, 0.25) == 4);
}

TEST_CASE("count_below is monotone in t and in the potential") {
  std::mt19937_64 rng(5);
  const BandMatrix k = random_band(rng, 30, 3);
  const std::vector<double> m = random_mass(rng, 30);
  int prev = 0;
  for (double t = -4.0; t <= 4.0; t += 0.5) {
    const int c = count_below(k, m, t);
    CHECK(c >= prev);
    prev = c;
  }

  // Raising the potential can only push eigenvalues up.
  const Pencil base = dirichlet_edge_pencil(1.0, 1.0 / 16, 0.0);
  const Pencil raised = dirichlet_edge_pencil(1.0, 1.0 / 16, 2.0);
  for (double t = 0.0; t < 300.0; t += 7.0)
    CHECK(count_below(raised, t) <= count_below(base, t));
}

TEST_CASE("spectral shift of a pencil against itself vanishes") {
  const Pencil p = dirichlet_edge_pencil(1.0, 1.0 / 8);
  std::vector<double> grid;
  for (double l = 0.0; l <= 200.0; l += 10.0) grid.push_back(l);
  for (int x : ssf(p, p, grid).xi) CHECK(x == 0);
}

TEST_CASE("constant-shift spectral shift identity") {
  const double c = 4.0;
  const Pencil p0 = dirichlet_edge_pencil(std::numbers::pi, std::numbers::pi / 32, 0.0);
  const Pencil pc = dirichlet_edge_pencil(std::numbers::pi, std::numbers::pi / 32, c);
  std::vector<double> grid;
  for (double l = 0.5; l <= 120.0; l += 3.5) grid.push_back(l);
  const SsfCurve curve = ssf(p0, pc, grid);
  for (size_t k = 0; k < grid.size(); ++k) {
    const int expect = count_below(p0, grid[k]) - count_below(p0, grid[k] - c);
    CHECK(curve.xi[k] == expect);
  }
}

TEST_CASE("rank bound on the counting difference") {
  const MetricGraph g = generate_path(4, 1.0);
  const ConditionField field = ConditionField::uniform(g, ConditionTag::Kirchhoff);
  const Subgraph sub = restrict_graph(g, EdgeSet::all(g));
  const ConditionField induced = induce_on_subgraph(field, sub);
  const Mesh mesh = Mesh::build(sub, induced, 0.125);
  const int n = mesh.dof_count();

  std::vector<double> v1(static_cast<size_t>(n), 0.0);
  std::vector<double> v2 = v1;
  const int r = 3;
  for (int i = 0; i < r; ++i) v2[static_cast<size_t>(5 + 7 * i)] = 50.0;

  const Pencil p1 = assemble(sub, induced, v1, mesh);
  const Pencil p2 = assemble(sub, induced, v2, mesh);
  std::vector<double> grid;
  for (double l = 0.0; l <= 300.0; l += 4.0) grid.push_back(l);
  const SsfCurve curve = ssf(p1, p2, grid);
  const std::vector<double> e1 = eigenvalues_dense(p1);
  const std::vector<double> e2 = eigenvalues_dense(p2);
  for (size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(curve.xi[k]) <= r);
    CHECK(curve.xi[k] ==
          count_below_sorted(e1, grid[k]) - count_below_sorted(e2, grid[k]));
  }
}

TEST_CASE("spectral shift rejects mismatched pencils") {
  const Pencil a = dirichlet_edge_pencil(1.0, 1.0 / 8);
  const Pencil b = dirichlet_edge_pencil(1.0, 1.0 / 16);
  CHECK_THROWS_AS(ssf(a, b, {1.0}), std::invalid_argument);
}

TEST_CASE("oracle method agrees with factorization methods") {
  const Pencil p = dirichlet_edge_pencil(2.0, 1.0 / 16, 1.5);
  for (double t : {0.0, 3.0, 17.0, 101.0}) {
    const int oracle = count_below(p, t, CountMethod::DenseOracle);
    CHECK(count_below(p, t, CountMethod::Auto) == oracle);
    CHECK(count_below(p, t, CountMethod::BandedLdlt) == oracle);
    CHECK(count_below(p, t, CountMethod::DenseBK) == oracle);
  }
}
