#include "qg/assembly.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qg {

double BandMatrix::max_abs() const {
  double m = 0.0;
  for (int j = 0; j < n_; ++j) {
    const double* c = col(j);
    const int len = std::min(kd_, n_ - 1 - j);
    for (int r = 0; r <= len; ++r) m = std::max(m, std::fabs(c[r]));
  }
  return m;
}

Pencil assemble(const Subgraph& sub, const ConditionField& induced,
                const std::vector<double>& node_potential, const Mesh& mesh) {
  const int n = mesh.dof_count();
  if (static_cast<int>(node_potential.size()) != n)
    throw std::invalid_argument("potential vector does not match the dof layout");
  for (double v : node_potential)
    if (std::isnan(v)) throw std::invalid_argument("NaN in potential vector");
  for (VertexId v : sub.vertices) {
    const ConditionTag tag = induced.at(v).tag;
    if (tag == ConditionTag::General)
      throw std::invalid_argument("general vertex conditions are not discretized");
  }

  Pencil p;
  p.K = BandMatrix(n, mesh.bandwidth());
  p.M.assign(static_cast<size_t>(n), 0.0);
  p.mesh = mesh;

  for (EdgeId e : mesh.edge_ids()) {
    const int ne = mesh.intervals(e);
    const double h = mesh.spacing(e);
    const double w = 1.0 / h;
    std::vector<int> chain;
    chain.reserve(static_cast<size_t>(ne) + 1);
    chain.push_back(mesh.end_dof(e, 0));
    for (int k = 1; k < ne; ++k) chain.push_back(mesh.interior_dof(e, k));
    chain.push_back(mesh.end_dof(e, 1));
    for (int k = 0; k < ne; ++k) {
      const int a = chain[static_cast<size_t>(k)];
      const int b = chain[static_cast<size_t>(k + 1)];
      if (a >= 0) {
        p.K.at(a, a) += w;
        p.M[static_cast<size_t>(a)] += 0.5 * h;
      }
      if (b >= 0) {
        p.K.at(b, b) += w;
        p.M[static_cast<size_t>(b)] += 0.5 * h;
      }
      if (a >= 0 && b >= 0 && a != b) p.K.at(std::max(a, b), std::min(a, b)) -= w;
    }
  }

  for (VertexId v : sub.vertices) {
    const VertexCondition& c = induced.at(v);
    if (c.tag != ConditionTag::Delta) continue;
    const std::vector<EdgeEnd> ends = sub.induced_ends(v);
    const int dof = mesh.end_dof(ends.front().edge, ends.front().end);
    p.K.at(dof, dof) += c.alpha;
  }

  for (int i = 0; i < n; ++i)
    p.K.at(i, i) += node_potential[static_cast<size_t>(i)] * p.M[static_cast<size_t>(i)];

  return p;
}

void dump_triplets(const Pencil& p, std::ostream& os) {
  os << "# pencil n=" << p.n() << " kd=" << p.K.kd() << "\n";
  for (int j = 0; j < p.n(); ++j) {
    const int len = std::min(p.K.kd(), p.n() - 1 - j);
    for (int r = 0; r <= len; ++r) {
      const double v = p.K.col(j)[r];
      if (v != 0.0) os << "K " << (j + r) << " " << j << " " << v << "\n";
    }
  }
  for (int i = 0; i < p.n(); ++i)
    os << "M " << i << " " << p.M[static_cast<size_t>(i)] << "\n";
}

}  // namespace qg
