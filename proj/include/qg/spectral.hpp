#pragma once

#include <vector>

#include "qg/assembly.hpp"
#include "qg/band.hpp"

namespace qg {

// How eigenvalue counts are computed.
//  Auto       - banded factorization when the profile is narrow, dense
//               Bunch-Kaufman otherwise; banded falls back to dense when
//               the no-interchange pivoting turns unstable.
//  BandedLdlt - force the banded path (errors instead of falling back).
//  DenseBK    - force the dense Bunch-Kaufman path.
//  DenseOracle- full eigensolve, then count. Slow; cross-check route.
enum class CountMethod { Auto, BandedLdlt, DenseBK, DenseOracle };

enum class FactorStatus {
  Ok,
  ZeroPivot,  // a pivot vanished relative to the matrix scale: the shift
              // sits (numerically) on an eigenvalue
  Unstable,   // adjacent-pivot banded elimination rejected a 2x2 pivot;
              // retry on the dense path
};

struct FactorResult {
  FactorStatus status = FactorStatus::Ok;
  int negatives = 0;  // eigenvalues below zero when status == Ok
  int step = -1;      // pivot index that failed otherwise
};

// LDLt with 1x1 and adjacent 2x2 pivot blocks on the banded profile; no
// interchanges, so the band never grows. A 2x2 block with negative
// determinant contributes one negative and one positive eigenvalue.
FactorResult ldlt_inertia_banded(BandMatrix a);

// Dense Bunch-Kaufman partial pivoting (lower storage). Robust for full
// profiles and the fallback for the banded path.
FactorResult ldlt_inertia_dense(const BandMatrix& a);

// #{pencil eigenvalues < t} by Sylvester inertia of K - t*M. If t lands on
// an eigenvalue (zero pivot), t is nudged downward by (1+|t|)*1e-12, then
// 10x and 100x that, before giving up; the downward direction keeps the
// strict-inequality convention. Throws with diagnostics after 3 nudges.
int count_below(const BandMatrix& K, const std::vector<double>& M, double t,
                CountMethod method = CountMethod::Auto);
int count_below(const Pencil& p, double t, CountMethod method = CountMethod::Auto);

// #{eigenvalues in the closed interval [lambda-eps, lambda+eps]} via two
// count_below calls with outward nudge delta = (1+|lambda|+eps)*1e-10, so
// endpoint hits are included.
int count_interval(const BandMatrix& K, const std::vector<double>& M,
                   double lambda, double eps, CountMethod method = CountMethod::Auto);
int count_interval(const Pencil& p, double lambda, double eps,
                   CountMethod method = CountMethod::Auto);

// All generalized eigenvalues of (K, M), ascending: symmetric reduction by
// the diagonal M^{-1/2}, then the in-repo dense solver. Refuses dof counts
// above `cap`.
std::vector<double> eigenvalues_dense(const BandMatrix& K, const std::vector<double>& M,
                                      int cap = 3000);
std::vector<double> eigenvalues_dense(const Pencil& p, int cap = 3000);

// Counting helpers on a precomputed ascending spectrum.
int count_below_sorted(const std::vector<double>& eigs, double t);
int count_interval_sorted(const std::vector<double>& eigs, double lambda, double eps);

// Spectral shift curve: xi(lambda) = N_1(lambda) - N_2(lambda) for a pencil
// pair sharing the dof layout and mass.
struct SsfCurve {
  std::vector<double> lambda;
  std::vector<int> xi;
};
SsfCurve ssf(const Pencil& p1, const Pencil& p2, const std::vector<double>& grid,
             CountMethod method = CountMethod::Auto);

}  // namespace qg
