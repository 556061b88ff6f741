#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "qg/graph.hpp"

using namespace qg;

TEST_CASE("smallest graph: one edge") {
  const MetricGraph g = MetricGraph::build(2, {{0, 0, 1, 1.0}});
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 1);
  CHECK(g.volume() == 1.0);
}

TEST_CASE("star degree bookkeeping") {
  const MetricGraph g = generate_star(3, std::numbers::pi);
  CHECK(g.degree(0) == 3);
  for (VertexId v = 1; v <= 3; ++v) CHECK(g.degree(v) == 1);
  CHECK(g.volume() == doctest::Approx(3 * std::numbers::pi));
}

TEST_CASE("invalid edges are rejected") {
  CHECK_THROWS_AS(MetricGraph::build(2, {{0, 0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MetricGraph::build(2, {{0, 0, 1, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MetricGraph::build(2, {{0, 0, 1, std::numeric_limits<double>::infinity()}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MetricGraph::build(2, {{0, 0, 7, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MetricGraph::build(2, {{1, 0, 1, 1.0}}), std::invalid_argument);
}

TEST_CASE("loops count twice in the degree") {
  const MetricGraph g = MetricGraph::build(1, {{0, 0, 0, 2.0}});
  CHECK(g.degree(0) == 2);
  CHECK(g.ends(0).size() == 2);
}

TEST_CASE("generators") {
  const MetricGraph path = generate_path(3, 1.0);
  CHECK(path.vertex_count() == 4);
  CHECK(path.edge_count() == 3);
  CHECK(path.volume() == 3.0);

  const MetricGraph grid = generate_grid(2, 2, 1.0);
  CHECK(grid.vertex_count() == 9);
  CHECK(grid.edge_count() == 12);

  const MetricGraph star = generate_star(5, 0.5);
  CHECK(star.degree(0) == 5);
  CHECK(star.volume() == doctest::Approx(2.5));

  CHECK_THROWS_AS(generate_path(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_grid(0, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(generate("hexagon", {1, 1}), std::invalid_argument);
}

TEST_CASE("restriction classifies boundary by dropped degree") {
  const MetricGraph path = generate_path(3, 1.0);
  const Subgraph sub = restrict_graph(path, EdgeSet::of({1}));
  CHECK(sub.vertices == std::vector<VertexId>{1, 2});
  CHECK(sub.boundary == std::vector<VertexId>{1, 2});
  CHECK(sub.interior.empty());

  const Subgraph all = restrict_graph(path, EdgeSet::all(path));
  CHECK(all.boundary.empty());
  CHECK(all.interior.size() == 4);
}

TEST_CASE("grid center restriction") {
  const MetricGraph grid = generate_grid(2, 2, 1.0);
  const VertexId center = 4;
  REQUIRE(grid.degree(center) == 4);
  std::vector<EdgeId> center_edges;
  for (const EdgeEnd& ee : grid.ends(center)) center_edges.push_back(ee.edge);
  const Subgraph sub = restrict_graph(grid, EdgeSet::of(center_edges));

  CHECK(sub.interior == std::vector<VertexId>{center});
  CHECK(sub.boundary.size() == 4);
  // Oracle: recompute the classification by brute-force degree counting.
  for (VertexId v : sub.vertices) {
    int induced = 0;
    for (const Edge& e : grid.edges())
      if (sub.edges.contains(e.id)) induced += (e.iota == v) + (e.tau == v);
    CHECK(induced == sub.induced_degree(v));
    CHECK(sub.is_boundary(v) == (induced < grid.degree(v)));
  }
}

TEST_CASE("restriction invariants on random subsets") {
  const MetricGraph grid = generate_grid(3, 2, 0.5);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<EdgeId> ids;
    for (int e = 0; e < grid.edge_count(); ++e)
      if (rng() % 2 == 0) ids.push_back(e);
    if (ids.empty()) ids.push_back(static_cast<EdgeId>(rng() % grid.edge_count()));
    const Subgraph sub = restrict_graph(grid, EdgeSet::of(ids));

    CHECK(sub.boundary.size() + sub.interior.size() == sub.vertices.size());
    std::set<VertexId> bset(sub.boundary.begin(), sub.boundary.end());
    for (VertexId v : sub.interior) CHECK_FALSE(bset.count(v));
    for (VertexId v : sub.vertices) {
      CHECK(sub.induced_degree(v) <= grid.degree(v));
      CHECK(sub.induced_degree(v) >= 1);  // no isolated vertices
    }
  }
}

TEST_CASE("volume") {
  const MetricGraph path = generate_path(3, 1.0);
  CHECK(volume(path, EdgeSet::all(path)) == 3.0);
  CHECK(volume(path, EdgeSet::of({2})) == 1.0);

  const MetricGraph g = MetricGraph::build(2, {{0, 0, 1, 0.25}});
  CHECK(volume(g, EdgeSet::all(g)) == 0.25);

  // Additivity over a disjoint split.
  const MetricGraph grid = generate_grid(2, 3, 0.75);
  std::vector<EdgeId> a, b;
  for (int e = 0; e < grid.edge_count(); ++e) (e % 3 == 0 ? a : b).push_back(e);
  CHECK(volume(grid, EdgeSet::of(a)) + volume(grid, EdgeSet::of(b)) ==
        doctest::Approx(grid.volume()).epsilon(1e-15));
}

TEST_CASE("edge sets") {
  const MetricGraph path = generate_path(4, 1.0);
  CHECK_THROWS_AS(EdgeSet::of({}), std::invalid_argument);
  CHECK_THROWS_AS(restrict_graph(path, EdgeSet::of({9})), std::invalid_argument);
  const EdgeSet s = EdgeSet::of({2, 0, 2});
  CHECK(s.size() == 2);
  CHECK(s.subset_of(EdgeSet::all(path)));
  CHECK_FALSE(EdgeSet::all(path).subset_of(s));
}
