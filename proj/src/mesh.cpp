#include "qg/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qg {

int Mesh::edge_index(EdgeId e) const {
  auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), e);
  if (it == edge_ids_.end() || *it != e)
    throw std::out_of_range("edge " + std::to_string(e) + " not in mesh");
  return static_cast<int>(it - edge_ids_.begin());
}

int Mesh::intervals(EdgeId e) const { return n_intervals_[static_cast<size_t>(edge_index(e))]; }
double Mesh::spacing(EdgeId e) const { return h_[static_cast<size_t>(edge_index(e))]; }
double Mesh::edge_length(EdgeId e) const { return length_[static_cast<size_t>(edge_index(e))]; }

int Mesh::interior_dof(EdgeId e, int k) const {
  const auto& ids = interior_[static_cast<size_t>(edge_index(e))];
  if (k < 1 || k > static_cast<int>(ids.size()))
    throw std::out_of_range("interior node index out of range");
  return ids[static_cast<size_t>(k - 1)];
}

int Mesh::end_dof(EdgeId e, int end) const {
  if (end != 0 && end != 1) throw std::out_of_range("edge end must be 0 or 1");
  return end_[static_cast<size_t>(edge_index(e))][static_cast<size_t>(end)];
}

bool Mesh::same_layout(const Mesh& other) const {
  if (edge_ids_ != other.edge_ids_ || n_intervals_ != other.n_intervals_) return false;
  if (back_map_.size() != other.back_map_.size()) return false;
  return interior_ == other.interior_ && end_ == other.end_;
}

Mesh Mesh::build(const Subgraph& sub, const ConditionField& induced, double target_h) {
  if (!(target_h > 0.0) || !std::isfinite(target_h))
    throw std::invalid_argument("mesh spacing must be positive");

  Mesh m;
  m.edge_ids_ = sub.edges.ids();
  const size_t ne = m.edge_ids_.size();
  m.n_intervals_.resize(ne);
  m.h_.resize(ne);
  m.length_.resize(ne);
  m.interior_.resize(ne);
  m.end_.assign(ne, {-1, -1});

  for (size_t i = 0; i < ne; ++i) {
    const double l = sub.parent->edge(m.edge_ids_[i]).length;
    const int n = std::max(2, static_cast<int>(std::ceil(l / target_h - 1e-9)));
    m.n_intervals_[i] = n;
    m.h_[i] = l / n;
    m.length_[i] = l;
  }

  // Provisional dof ids: vertex dofs in vertex order, then edge interiors.
  std::vector<DofRef> refs;
  for (VertexId v : sub.vertices) {
    const VertexCondition& c = induced.at(v);
    const std::vector<EdgeEnd> ends = sub.induced_ends(v);
    if (static_cast<int>(ends.size()) != c.degree)
      throw std::invalid_argument("condition degree mismatch at vertex " +
                                  std::to_string(v));
    switch (c.tag) {
      case ConditionTag::Dirichlet:
        break;
      case ConditionTag::Kirchhoff:
      case ConditionTag::Delta: {
        DofRef r;
        r.kind = DofRef::Kind::Vertex;
        r.vertex = v;
        r.edge = ends.front().edge;  // representative end for pointwise values
        r.end = ends.front().end;
        const int id = static_cast<int>(refs.size());
        refs.push_back(r);
        for (const EdgeEnd& ee : ends) {
          auto& slot = m.end_[static_cast<size_t>(m.edge_index(ee.edge))];
          slot[static_cast<size_t>(ee.end)] = id;
        }
        break;
      }
      case ConditionTag::Neumann: {
        for (const EdgeEnd& ee : ends) {
          DofRef r;
          r.kind = DofRef::Kind::VertexSlot;
          r.vertex = v;
          r.edge = ee.edge;
          r.end = ee.end;
          const int id = static_cast<int>(refs.size());
          refs.push_back(r);
          m.end_[static_cast<size_t>(m.edge_index(ee.edge))][static_cast<size_t>(ee.end)] = id;
        }
        break;
      }
      case ConditionTag::General:
        throw std::invalid_argument(
            "general vertex conditions are not discretized; use "
            "dirichlet/neumann/kirchhoff/delta");
    }
  }
  for (size_t i = 0; i < ne; ++i) {
    const int n = m.n_intervals_[i];
    m.interior_[i].resize(static_cast<size_t>(n - 1));
    for (int k = 1; k < n; ++k) {
      DofRef r;
      r.kind = DofRef::Kind::EdgeInterior;
      r.edge = m.edge_ids_[i];
      r.node = k;
      m.interior_[i][static_cast<size_t>(k - 1)] = static_cast<int>(refs.size());
      refs.push_back(r);
    }
  }

  const int ndof = static_cast<int>(refs.size());
  if (ndof == 0) throw std::invalid_argument("mesh has no dofs (all-Dirichlet, no interior?)");

  // Adjacency along every edge chain.
  std::vector<std::vector<int>> adj(static_cast<size_t>(ndof));
  for (size_t i = 0; i < ne; ++i) {
    std::vector<int> chain;
    chain.push_back(m.end_[i][0]);
    for (int id : m.interior_[i]) chain.push_back(id);
    chain.push_back(m.end_[i][1]);
    for (size_t k = 0; k + 1 < chain.size(); ++k) {
      const int a = chain[k], b = chain[k + 1];
      if (a >= 0 && b >= 0 && a != b) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
      }
    }
  }
  for (auto& l : adj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }

  // Reverse Cuthill-McKee on the dof graph: BFS from a minimum-degree dof,
  // neighbors visited by ascending (degree, id), order reversed.
  std::vector<int> order;
  order.reserve(static_cast<size_t>(ndof));
  std::vector<char> visited(static_cast<size_t>(ndof), 0);
  auto deg = [&](int i) { return static_cast<int>(adj[static_cast<size_t>(i)].size()); };
  while (static_cast<int>(order.size()) < ndof) {
    int start = -1;
    for (int i = 0; i < ndof; ++i)
      if (!visited[static_cast<size_t>(i)] &&
          (start < 0 || deg(i) < deg(start)))
        start = i;
    visited[static_cast<size_t>(start)] = 1;
    size_t head = order.size();
    order.push_back(start);
    while (head < order.size()) {
      const int u = order[head++];
      std::vector<int> next;
      for (int w : adj[static_cast<size_t>(u)])
        if (!visited[static_cast<size_t>(w)]) next.push_back(w);
      std::sort(next.begin(), next.end(), [&](int a, int b) {
        return deg(a) != deg(b) ? deg(a) < deg(b) : a < b;
      });
      for (int w : next) {
        visited[static_cast<size_t>(w)] = 1;
        order.push_back(w);
      }
    }
  }
  std::reverse(order.begin(), order.end());

  std::vector<int> perm(static_cast<size_t>(ndof));  // provisional -> final
  for (int pos = 0; pos < ndof; ++pos)
    perm[static_cast<size_t>(order[static_cast<size_t>(pos)])] = pos;

  m.back_map_.resize(static_cast<size_t>(ndof));
  for (int i = 0; i < ndof; ++i)
    m.back_map_[static_cast<size_t>(perm[static_cast<size_t>(i)])] = refs[static_cast<size_t>(i)];
  for (auto& slot : m.end_)
    for (int& id : slot)
      if (id >= 0) id = perm[static_cast<size_t>(id)];
  for (auto& ids : m.interior_)
    for (int& id : ids) id = perm[static_cast<size_t>(id)];

  int bw = 0;
  for (int i = 0; i < ndof; ++i)
    for (int w : adj[static_cast<size_t>(i)])
      bw = std::max(bw, std::abs(perm[static_cast<size_t>(i)] - perm[static_cast<size_t>(w)]));
  m.bandwidth_ = bw;
  return m;
}

}  // namespace qg
