#pragma once

#include <iosfwd>
#include <vector>

#include "qg/band.hpp"
#include "qg/conditions.hpp"
#include "qg/graph.hpp"
#include "qg/mesh.hpp"

namespace qg {

// Discretized operator as the generalized pencil (K, M): K symmetric
// banded (stiffness + potential), M the positive lumped-mass diagonal.
// Eigenvalues of the pencil approximate the operator's spectrum to second
// order in the mesh spacing.
struct Pencil {
  BandMatrix K;
  std::vector<double> M;
  Mesh mesh;

  int n() const { return static_cast<int>(M.size()); }
};

// P1 elements with lumped mass on the given mesh. `node_potential` is
// dof-indexed (see Mesh::back_map) and enters the diagonal as V_i * M_ii.
// Only dirichlet/neumann/kirchhoff/delta conditions are supported; a
// delta(alpha) vertex adds alpha to K at the shared vertex dof.
Pencil assemble(const Subgraph& sub, const ConditionField& induced,
                const std::vector<double>& node_potential, const Mesh& mesh);

// Text dump, one entry per line: "K i j value" for the lower-triangle
// nonzeros, then "M i value" for the mass diagonal. Header line carries n
// and the stored half-bandwidth.
void dump_triplets(const Pencil& p, std::ostream& os);

}  // namespace qg
