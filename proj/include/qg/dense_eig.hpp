#pragma once

#include <vector>

namespace qg {

// Eigenvalues of a dense real symmetric matrix, ascending. `a` is n*n
// row-major; only the lower triangle is read. Householder reduction to
// tridiagonal form followed by implicit-shift QL.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

// In-place QL with implicit shifts on a symmetric tridiagonal matrix.
// d = diagonal (n), e = subdiagonal with e[0] unused and e[i] = T(i, i-1).
// On return d holds the eigenvalues, unsorted. Throws after an iteration
// cap is exceeded (does not happen for finite input).
void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double>& e);

}  // namespace qg
