#include <doctest.h>

#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

#include "qg/conditions.hpp"

using namespace qg;

namespace {

bool same_matrices(const VertexCondition& a, const VertexCondition& b) {
  if (a.degree != b.degree) return false;
  for (int i = 0; i < a.degree; ++i)
    for (int j = 0; j < a.degree; ++j)
      if (a.A.at(i, j) != b.A.at(i, j) || a.B.at(i, j) != b.B.at(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("standard families validate") {
  for (int d = 1; d <= 6; ++d) {
    CHECK(validate(dirichlet(d)).ok());
    CHECK(validate(neumann(d)).ok());
    CHECK(validate(kirchhoff(d)).ok());
    for (double alpha : {-2.5, 0.0, 5.0}) CHECK(validate(delta(d, alpha)).ok());
  }
  CHECK_THROWS_AS(dirichlet(0), std::invalid_argument);
  CHECK_THROWS_AS(delta(2, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("kirchhoff(1) coincides with neumann(1)") {
  CHECK(same_matrices(kirchhoff(1), neumann(1)));
}

TEST_CASE("delta at zero coupling recovers kirchhoff") {
  CHECK(same_matrices(delta(2, 0.0), kirchhoff(2)));
  CHECK(validate(delta(2, 5.0)).ok());
}

TEST_CASE("validate flags rank and hermitian defects") {
  {
    CMatrix a = CMatrix::identity(2), b = CMatrix::identity(2);
    const ConditionReport rep = validate(general_condition(a, b));
    CHECK(rep.ok());
  }
  {
    const ConditionReport rep = validate(general_condition(CMatrix(2, 2), CMatrix(2, 2)));
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.rank_ok);
    CHECK(rep.rank == 0);
  }
  {
    CMatrix a(1, 1), b(1, 1);
    a.at(0, 0) = 1.0;
    b.at(0, 0) = Complex(0.0, 1.0);  // AB* = -i, not Hermitian
    const ConditionReport rep = validate(general_condition(a, b));
    CHECK(rep.rank_ok);
    CHECK_FALSE(rep.hermitian_ok);
  }
}

TEST_CASE("kirchhoff subspace contains equal-value zero-sum pairs") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  for (int d = 2; d <= 5; ++d) {
    const VertexCondition c = kirchhoff(d);
    for (int trial = 0; trial < 10; ++trial) {
      const double s = dist(rng);
      std::vector<double> sp(static_cast<size_t>(d));
      double sum = 0.0;
      for (int i = 0; i + 1 < d; ++i) {
        sp[static_cast<size_t>(i)] = dist(rng);
        sum += sp[static_cast<size_t>(i)];
      }
      sp[static_cast<size_t>(d - 1)] = -sum;
      for (int i = 0; i < d; ++i) {
        Complex r = 0.0;
        for (int j = 0; j < d; ++j)
          r += c.A.at(i, j) * s + c.B.at(i, j) * sp[static_cast<size_t>(j)];
        CHECK(std::abs(r) < 1e-12);
      }
    }
  }
}

TEST_CASE("induced conditions: dirichlet on boundary") {
  const MetricGraph path = generate_path(3, 1.0);
  const ConditionField field = ConditionField::uniform(path, ConditionTag::Kirchhoff);

  const Subgraph middle = restrict_graph(path, EdgeSet::of({1}));
  const ConditionField induced = induce_on_subgraph(field, middle);
  CHECK(induced.at(1).tag == ConditionTag::Dirichlet);
  CHECK(induced.at(1).degree == 1);
  CHECK(induced.at(2).tag == ConditionTag::Dirichlet);
  CHECK_FALSE(induced.has(0));

  const Subgraph full = restrict_graph(path, EdgeSet::all(path));
  const ConditionField same = induce_on_subgraph(field, full);
  for (VertexId v = 0; v < path.vertex_count(); ++v) {
    CHECK(same.at(v).tag == field.at(v).tag);
    CHECK(same.at(v).degree == field.at(v).degree);
  }
}

TEST_CASE("induced conditions on the grid center patch") {
  const MetricGraph grid = generate_grid(2, 2, 1.0);
  const ConditionField field = ConditionField::uniform(grid, ConditionTag::Kirchhoff);
  std::vector<EdgeId> center_edges;
  for (const EdgeEnd& ee : grid.ends(4)) center_edges.push_back(ee.edge);
  const Subgraph sub = restrict_graph(grid, EdgeSet::of(center_edges));
  const ConditionField induced = induce_on_subgraph(field, sub);

  CHECK(induced.at(4).tag == ConditionTag::Kirchhoff);
  CHECK(induced.at(4).degree == 4);
  for (VertexId v : sub.boundary) {
    CHECK(induced.at(v).tag == ConditionTag::Dirichlet);
    CHECK(induced.at(v).degree == 1);
  }

  // Repeated restriction to the same edge set changes nothing.
  const ConditionField again = induce_on_subgraph(induced, sub);
  for (VertexId v : sub.vertices) {
    CHECK(again.at(v).tag == induced.at(v).tag);
    CHECK(again.at(v).degree == induced.at(v).degree);
  }
}

TEST_CASE("field coverage checks") {
  const MetricGraph path = generate_path(2, 1.0);
  ConditionField f;
  f.set(0, dirichlet(1));
  CHECK_THROWS_AS(f.check_against(path), std::invalid_argument);
  f.set(1, dirichlet(1));  // wrong degree: vertex 1 has degree 2
  f.set(2, dirichlet(1));
  CHECK_THROWS_AS(f.check_against(path), std::invalid_argument);
  f.set(1, kirchhoff(2));
  CHECK_NOTHROW(f.check_against(path));
}
