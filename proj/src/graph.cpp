#include "qg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qg {

MetricGraph MetricGraph::build(int vertex_count, std::vector<Edge> edges) {
  if (vertex_count <= 0) throw std::invalid_argument("graph needs at least one vertex");
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.id != static_cast<EdgeId>(i))
      throw std::invalid_argument("edge ids must be dense 0..m-1, missing id " +
                                  std::to_string(i));
    if (e.iota < 0 || e.iota >= vertex_count || e.tau < 0 || e.tau >= vertex_count)
      throw std::invalid_argument("edge " + std::to_string(e.id) +
                                  " references an undeclared vertex");
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw std::invalid_argument("edge " + std::to_string(e.id) +
                                  " has non-positive or non-finite length");
  }
  MetricGraph g;
  g.vertex_count_ = vertex_count;
  g.edges_ = std::move(edges);
  g.incidence_.resize(static_cast<size_t>(vertex_count));
  for (const Edge& e : g.edges_) {
    g.incidence_[static_cast<size_t>(e.iota)].push_back({e.id, 0});
    g.incidence_[static_cast<size_t>(e.tau)].push_back({e.id, 1});
  }
  for (auto& ends : g.incidence_)
    std::sort(ends.begin(), ends.end(), [](const EdgeEnd& a, const EdgeEnd& b) {
      return a.edge != b.edge ? a.edge < b.edge : a.end < b.end;
    });
  return g;
}

double MetricGraph::volume() const {
  double v = 0.0;
  for (const Edge& e : edges_) v += e.length;
  return v;
}

MetricGraph generate_path(int n_edges, double length) {
  if (n_edges < 1) throw std::invalid_argument("path needs at least one edge");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n_edges));
  for (int i = 0; i < n_edges; ++i) edges.push_back({i, i, i + 1, length});
  return MetricGraph::build(n_edges + 1, std::move(edges));
}

MetricGraph generate_star(int rays, double length) {
  if (rays < 1) throw std::invalid_argument("star needs at least one ray");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(rays));
  for (int i = 0; i < rays; ++i) edges.push_back({i, 0, i + 1, length});
  return MetricGraph::build(rays + 1, std::move(edges));
}

MetricGraph generate_grid(int nx, int ny, double length) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid needs nx, ny >= 1");
  const int vx = nx + 1;
  auto vid = [vx](int i, int j) { return j * vx + i; };
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(ny * (nx + 1) + nx * (ny + 1)));
  EdgeId id = 0;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i < nx; ++i) edges.push_back({id++, vid(i, j), vid(i + 1, j), length});
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i <= nx; ++i) edges.push_back({id++, vid(i, j), vid(i, j + 1), length});
  return MetricGraph::build(vx * (ny + 1), std::move(edges));
}

MetricGraph generate(const std::string& kind, const std::vector<double>& params) {
  if (kind == "path" && params.size() == 2)
    return generate_path(static_cast<int>(params[0]), params[1]);
  if (kind == "star" && params.size() == 2)
    return generate_star(static_cast<int>(params[0]), params[1]);
  if (kind == "grid" && params.size() == 3)
    return generate_grid(static_cast<int>(params[0]), static_cast<int>(params[1]), params[2]);
  throw std::invalid_argument("unknown generator '" + kind + "' or wrong parameter count");
}

EdgeSet EdgeSet::of(std::vector<EdgeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw std::invalid_argument("edge set must be nonempty");
  if (ids.front() < 0) throw std::invalid_argument("negative edge id");
  EdgeSet s;
  s.ids_ = std::move(ids);
  return s;
}

EdgeSet EdgeSet::all(const MetricGraph& g) {
  std::vector<EdgeId> ids(static_cast<size_t>(g.edge_count()));
  for (int i = 0; i < g.edge_count(); ++i) ids[static_cast<size_t>(i)] = i;
  return of(std::move(ids));
}

EdgeSet EdgeSet::first(const MetricGraph& g, int count) {
  if (count < 1 || count > g.edge_count())
    throw std::invalid_argument("edge set size out of range");
  std::vector<EdgeId> ids(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) ids[static_cast<size_t>(i)] = i;
  return of(std::move(ids));
}

bool EdgeSet::contains(EdgeId e) const {
  return std::binary_search(ids_.begin(), ids_.end(), e);
}

bool EdgeSet::subset_of(const EdgeSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

bool Subgraph::has_vertex(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Subgraph::is_boundary(VertexId v) const {
  return std::binary_search(boundary.begin(), boundary.end(), v);
}

int Subgraph::induced_degree(VertexId v) const {
  int d = 0;
  for (const EdgeEnd& ee : parent->ends(v))
    if (edges.contains(ee.edge)) ++d;
  return d;
}

std::vector<EdgeEnd> Subgraph::induced_ends(VertexId v) const {
  std::vector<EdgeEnd> out;
  for (const EdgeEnd& ee : parent->ends(v))
    if (edges.contains(ee.edge)) out.push_back(ee);
  return out;
}

Subgraph restrict_graph(const MetricGraph& g, EdgeSet edges) {
  for (EdgeId e : edges)
    if (e >= g.edge_count())
      throw std::invalid_argument("edge set references edge " + std::to_string(e) +
                                  " outside the graph");
  Subgraph sub;
  sub.parent = &g;
  sub.edges = std::move(edges);
  std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
  for (EdgeId e : sub.edges) {
    seen[static_cast<size_t>(g.edge(e).iota)] = 1;
    seen[static_cast<size_t>(g.edge(e).tau)] = 1;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!seen[static_cast<size_t>(v)]) continue;
    sub.vertices.push_back(v);
    if (sub.induced_degree(v) < g.degree(v))
      sub.boundary.push_back(v);
    else
      sub.interior.push_back(v);
  }
  return sub;
}

double volume(const MetricGraph& g, const EdgeSet& edges) {
  double v = 0.0;
  for (EdgeId e : edges) v += g.edge(e).length;
  return v;
}

double volume(const Subgraph& sub) { return volume(*sub.parent, sub.edges); }

}  // namespace qg
