#pragma once

#include <array>
#include <vector>

#include "qg/conditions.hpp"
#include "qg/graph.hpp"

namespace qg {

// Where a dof lives. Vertex dofs are shared by all incident edge ends
// (Kirchhoff/delta); VertexSlot dofs belong to a single edge end (Neumann
// decouples the ends); Dirichlet vertices own no dof. For Vertex dofs,
// (edge, end) is the representative end used when a pointwise value at the
// vertex is needed: the lowest (edge id, end) among the incident ends.
struct DofRef {
  enum class Kind { EdgeInterior, Vertex, VertexSlot };
  Kind kind = Kind::EdgeInterior;
  VertexId vertex = -1;
  EdgeId edge = -1;
  int end = -1;   // 0 = iota side, 1 = tau side
  int node = -1;  // EdgeInterior: node index 1..n_e-1 along the edge
};

// Piecewise-linear nodes on a subgraph: each edge split into
// n_e = max(2, ceil(l_e / target_h)) equal intervals. Dofs are numbered in
// a bandwidth-reducing order (breadth-first from a minimum-degree dof,
// reversed).
class Mesh {
 public:
  static Mesh build(const Subgraph& sub, const ConditionField& induced,
                    double target_h);

  int dof_count() const { return static_cast<int>(back_map_.size()); }
  const std::vector<EdgeId>& edge_ids() const { return edge_ids_; }
  int intervals(EdgeId e) const;
  double spacing(EdgeId e) const;
  double edge_length(EdgeId e) const;

  int interior_dof(EdgeId e, int k) const;  // k in 1..n_e-1
  int end_dof(EdgeId e, int end) const;     // -1 at a Dirichlet vertex
  const DofRef& dof(int i) const { return back_map_.at(static_cast<size_t>(i)); }
  const std::vector<DofRef>& back_map() const { return back_map_; }

  int bandwidth() const { return bandwidth_; }

  // True when the other mesh has the same edges, subdivisions and dof map.
  bool same_layout(const Mesh& other) const;

 private:
  int edge_index(EdgeId e) const;

  std::vector<EdgeId> edge_ids_;            // sorted
  std::vector<int> n_intervals_;            // per edge index
  std::vector<double> h_;                   // per edge index
  std::vector<double> length_;              // per edge index
  std::vector<std::vector<int>> interior_;  // per edge index, dofs of nodes 1..n-1
  std::vector<std::array<int, 2>> end_;     // per edge index, dof per end (-1 = none)
  std::vector<DofRef> back_map_;
  int bandwidth_ = 0;
};

}  // namespace qg
