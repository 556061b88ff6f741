#pragma once

#include <string>
#include <vector>

namespace qg {

using VertexId = int;
using EdgeId = int;

struct Edge {
  EdgeId id;
  VertexId iota;  // initial vertex
  VertexId tau;   // terminal vertex
  double length;  // 0 < length < inf
};

// One attachment of an edge to a vertex. A loop shows up twice in the
// vertex's end list (end 0 and end 1), so degrees count loops twice.
struct EdgeEnd {
  EdgeId edge;
  int end;  // 0 = iota side, 1 = tau side
};

// Finite metric graph: dense vertex ids 0..n-1, dense edge ids 0..m-1,
// loops and multi-edges allowed. Immutable after build().
class MetricGraph {
 public:
  static MetricGraph build(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<size_t>(e)); }
  const std::vector<Edge>& edges() const { return edges_; }

  int degree(VertexId v) const { return static_cast<int>(ends(v).size()); }
  const std::vector<EdgeEnd>& ends(VertexId v) const {
    return incidence_.at(static_cast<size_t>(v));
  }

  double volume() const;

 private:
  MetricGraph() = default;
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeEnd>> incidence_;  // per vertex, sorted by (edge, end)
};

MetricGraph generate_path(int n_edges, double length);
MetricGraph generate_star(int rays, double length);
// grid(nx, ny): nx-by-ny cells of a square lattice, (nx+1)(ny+1) vertices,
// horizontal edges first (row-major), then vertical edges (row-major).
MetricGraph generate_grid(int nx, int ny, double length);
MetricGraph generate(const std::string& kind, const std::vector<double>& params);

// Sorted, duplicate-free, nonempty set of edge ids of one parent graph.
class EdgeSet {
 public:
  static EdgeSet of(std::vector<EdgeId> ids);
  static EdgeSet all(const MetricGraph& g);
  static EdgeSet first(const MetricGraph& g, int count);

  int size() const { return static_cast<int>(ids_.size()); }
  bool contains(EdgeId e) const;
  bool subset_of(const EdgeSet& other) const;
  const std::vector<EdgeId>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

 private:
  std::vector<EdgeId> ids_;
};

// Restriction of a graph to an edge set: vertices split into boundary
// (induced degree dropped) and interior (induced degree equals parent
// degree) classes.
struct Subgraph {
  const MetricGraph* parent = nullptr;
  EdgeSet edges;
  std::vector<VertexId> vertices;  // sorted
  std::vector<VertexId> boundary;  // sorted
  std::vector<VertexId> interior;  // sorted

  bool has_vertex(VertexId v) const;
  bool is_boundary(VertexId v) const;
  int induced_degree(VertexId v) const;
  // Edge ends at v that lie inside the edge set, sorted by (edge, end).
  std::vector<EdgeEnd> induced_ends(VertexId v) const;
};

Subgraph restrict_graph(const MetricGraph& g, EdgeSet edges);

double volume(const MetricGraph& g, const EdgeSet& edges);
double volume(const Subgraph& sub);

}  // namespace qg
