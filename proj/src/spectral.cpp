#include "qg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qg/dense_eig.hpp"
#include "qg/kernels.hpp"

namespace qg {
namespace {

constexpr double kBunchAlpha = 0.6403882032022076;  // (1 + sqrt(17)) / 8
constexpr double kZeroPivotRel = 1e-13;
constexpr double kGrowthLimit = 1e7;

}  // namespace

FactorResult ldlt_inertia_banded(BandMatrix a) {
  const auto& K = kernels::active();
  const int n = a.n();
  const int kd = a.kd();
  const double scale = a.max_abs();
  if (scale == 0.0) return {FactorStatus::ZeroPivot, 0, 0};
  const double zero_tol = kZeroPivotRel * scale;

  int neg = 0;
  int j = 0;
  while (j < n) {
    double* colj = a.col(j);
    const int m = std::min(kd, n - 1 - j);
    const double d = colj[0];
    double sigma = 0.0;
    for (int r = 1; r <= m; ++r) sigma = std::max(sigma, std::fabs(colj[r]));

    if (std::max(std::fabs(d), sigma) <= zero_tol)
      return {FactorStatus::ZeroPivot, neg, j};

    if (std::fabs(d) >= kBunchAlpha * sigma) {
      if (d < 0.0) ++neg;
      for (int c = 1; c <= m; ++c) {
        const double s = colj[c] / d;
        if (s != 0.0) K.axpy(-s, colj + c, a.col(j + c), static_cast<size_t>(m - c + 1));
      }
      ++j;
      continue;
    }

    // Adjacent 2x2 pivot on rows (j, j+1).
    double* colj1 = a.col(j + 1);
    const int m2 = std::min(kd, n - 2 - j);
    const double b = colj1[0];
    const double c2 = colj[1];
    const double det = d * b - c2 * c2;
    const double piv_scale = std::max({std::fabs(d), std::fabs(b), std::fabs(c2)});
    double colmax = sigma;
    for (int r = 1; r <= m2; ++r) colmax = std::max(colmax, std::fabs(colj1[r]));
    // Reject when the block cannot absorb the column safely; the dense
    // path re-solves with real interchanges.
    if (std::fabs(det) <= zero_tol * piv_scale ||
        2.0 * piv_scale * colmax > kGrowthLimit * std::fabs(det))
      return {FactorStatus::Unstable, neg, j};

    if (det < 0.0)
      ++neg;
    else if (d + b < 0.0)
      neg += 2;

    for (int r = 0; r < m2; ++r) {
      const double x = colj[r + 2];   // pad slot keeps this safe at r = m2-1
      const double y = colj1[r + 1];
      const double s1 = (b * x - c2 * y) / det;
      const double s2 = (d * y - c2 * x) / det;
      if (s1 != 0.0 || s2 != 0.0)
        K.axpy2(-s1, colj + r + 2, -s2, colj1 + r + 1, a.col(j + 2 + r),
                static_cast<size_t>(m2 - r));
    }
    j += 2;
  }
  return {FactorStatus::Ok, neg, -1};
}

namespace {

// Symmetric swap of rows/columns kk <-> kp (kp > kk) in dense lower
// col-major storage.
void sym_swap_lower(std::vector<double>& a, int n, int kk, int kp) {
  auto at = [&](int i, int j) -> double& {
    return a[static_cast<size_t>(j) * static_cast<size_t>(n) + static_cast<size_t>(i)];
  };
  for (int i = kp + 1; i < n; ++i) std::swap(at(i, kk), at(i, kp));
  for (int i = kk + 1; i < kp; ++i) std::swap(at(i, kk), at(kp, i));
  std::swap(at(kk, kk), at(kp, kp));
}

}  // namespace

FactorResult ldlt_inertia_dense(const BandMatrix& src) {
  const auto& K = kernels::active();
  const int n = src.n();
  std::vector<double> a(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    const int len = std::min(src.kd(), n - 1 - j);
    for (int r = 0; r <= len; ++r)
      a[static_cast<size_t>(j) * static_cast<size_t>(n) + static_cast<size_t>(j + r)] =
          src.col(j)[r];
  }
  auto at = [&](int i, int j) -> double& {
    return a[static_cast<size_t>(j) * static_cast<size_t>(n) + static_cast<size_t>(i)];
  };

  double scale = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) scale = std::max(scale, std::fabs(at(i, j)));
  if (scale == 0.0) return {FactorStatus::ZeroPivot, 0, 0};
  const double zero_tol = kZeroPivotRel * scale;

  int neg = 0;
  int k = 0;
  while (k < n) {
    const double akk = std::fabs(at(k, k));
    double colmax = 0.0;
    int imax = k;
    for (int i = k + 1; i < n; ++i) {
      const double v = std::fabs(at(i, k));
      if (v > colmax) { colmax = v; imax = i; }
    }
    if (std::max(akk, colmax) <= zero_tol) return {FactorStatus::ZeroPivot, neg, k};

    int kstep = 1;
    int kp = k;
    if (akk < kBunchAlpha * colmax) {
      double rowmax = 0.0;
      for (int j = k; j < imax; ++j) rowmax = std::max(rowmax, std::fabs(at(imax, j)));
      for (int i = imax + 1; i < n; ++i) rowmax = std::max(rowmax, std::fabs(at(i, imax)));
      if (akk * rowmax >= kBunchAlpha * colmax * colmax) {
        kp = k;
      } else if (std::fabs(at(imax, imax)) >= kBunchAlpha * rowmax) {
        kp = imax;
      } else {
        kp = imax;
        kstep = 2;
      }
    }

    const int kk = (kstep == 2) ? k + 1 : k;
    if (kp != kk) {
      if (kstep == 2) std::swap(at(k + 1, k), at(kp, k));
      sym_swap_lower(a, n, kk, kp);
    }

    if (kstep == 1) {
      const double d = at(k, k);
      if (std::fabs(d) <= zero_tol) return {FactorStatus::ZeroPivot, neg, k};
      if (d < 0.0) ++neg;
      const double* ck = &a[static_cast<size_t>(k) * static_cast<size_t>(n)];
      for (int j = k + 1; j < n; ++j) {
        const double s = at(j, k) / d;
        if (s != 0.0)
          K.axpy(-s, ck + j, &a[static_cast<size_t>(j) * static_cast<size_t>(n) + j],
                 static_cast<size_t>(n - j));
      }
      ++k;
    } else {
      const double d = at(k, k);
      const double c2 = at(k + 1, k);
      const double b = at(k + 1, k + 1);
      const double det = d * b - c2 * c2;
      const double piv_scale = std::max({std::fabs(d), std::fabs(b), std::fabs(c2)});
      if (std::fabs(det) <= zero_tol * piv_scale)
        return {FactorStatus::ZeroPivot, neg, k};
      if (det < 0.0)
        ++neg;
      else if (d + b < 0.0)
        neg += 2;
      const double* ck = &a[static_cast<size_t>(k) * static_cast<size_t>(n)];
      const double* ck1 = &a[static_cast<size_t>(k + 1) * static_cast<size_t>(n)];
      for (int j = k + 2; j < n; ++j) {
        const double x = at(j, k);
        const double y = at(j, k + 1);
        const double s1 = (b * x - c2 * y) / det;
        const double s2 = (d * y - c2 * x) / det;
        if (s1 != 0.0 || s2 != 0.0)
          K.axpy2(-s1, ck + j, -s2, ck1 + j,
                  &a[static_cast<size_t>(j) * static_cast<size_t>(n) + j],
                  static_cast<size_t>(n - j));
      }
      k += 2;
    }
  }
  return {FactorStatus::Ok, neg, -1};
}

namespace {

BandMatrix shifted(const BandMatrix& K, const std::vector<double>& M, double t) {
  BandMatrix a = K;
  for (int i = 0; i < a.n(); ++i) a.at(i, i) -= t * M[static_cast<size_t>(i)];
  return a;
}

bool prefer_banded(const BandMatrix& K) {
  return K.kd() + 1 <= std::max(16, K.n() / 4);
}

FactorResult factor_once(const BandMatrix& K, const std::vector<double>& M, double t,
                         CountMethod method) {
  const BandMatrix a = shifted(K, M, t);
  switch (method) {
    case CountMethod::BandedLdlt:
      return ldlt_inertia_banded(a);
    case CountMethod::DenseBK:
      return ldlt_inertia_dense(a);
    case CountMethod::Auto: {
      if (prefer_banded(K)) {
        FactorResult r = ldlt_inertia_banded(a);
        if (r.status != FactorStatus::Unstable) return r;
      }
      return ldlt_inertia_dense(a);
    }
    case CountMethod::DenseOracle:
      break;
  }
  throw std::logic_error("factor_once called with the oracle method");
}

}  // namespace

int count_below(const BandMatrix& K, const std::vector<double>& M, double t,
                CountMethod method) {
  if (static_cast<int>(M.size()) != K.n())
    throw std::invalid_argument("mass diagonal size mismatch");
  if (method == CountMethod::DenseOracle)
    return count_below_sorted(eigenvalues_dense(K, M), t);

  double t_try = t;
  FactorResult last;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    last = factor_once(K, M, t_try, method);
    if (last.status == FactorStatus::Ok) return last.negatives;
    if (last.status == FactorStatus::Unstable) break;  // forced banded only
    // Shift sits on an eigenvalue: nudge downward and retry.
    t_try = t - (1.0 + std::fabs(t)) * 1e-12 * std::pow(10.0, attempt);
  }
  std::ostringstream os;
  os << "inertia factorization failed at t=" << t << " (pivot step " << last.step
     << ", " << (last.status == FactorStatus::Unstable ? "unstable" : "zero pivot")
     << " after nudges)";
  throw std::runtime_error(os.str());
}

int count_below(const Pencil& p, double t, CountMethod method) {
  return count_below(p.K, p.M, t, method);
}

int count_interval(const BandMatrix& K, const std::vector<double>& M, double lambda,
                   double eps, CountMethod method) {
  if (!(eps > 0.0)) throw std::invalid_argument("interval half-width must be positive");
  const double delta = (1.0 + std::fabs(lambda) + eps) * 1e-10;
  if (method == CountMethod::DenseOracle) {
    const std::vector<double> eigs = eigenvalues_dense(K, M);
    return count_below_sorted(eigs, lambda + eps + delta) -
           count_below_sorted(eigs, lambda - eps - delta);
  }
  return count_below(K, M, lambda + eps + delta, method) -
         count_below(K, M, lambda - eps - delta, method);
}

int count_interval(const Pencil& p, double lambda, double eps, CountMethod method) {
  return count_interval(p.K, p.M, lambda, eps, method);
}

std::vector<double> eigenvalues_dense(const BandMatrix& K, const std::vector<double>& M,
                                      int cap) {
  const int n = K.n();
  if (static_cast<int>(M.size()) != n)
    throw std::invalid_argument("mass diagonal size mismatch");
  if (n > cap)
    throw std::invalid_argument("dense eigensolve refused: " + std::to_string(n) +
                                " dofs exceeds cap " + std::to_string(cap));
  std::vector<double> inv_sqrt_m(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double m = M[static_cast<size_t>(i)];
    if (!(m > 0.0)) throw std::invalid_argument("mass diagonal must be positive");
    inv_sqrt_m[static_cast<size_t>(i)] = 1.0 / std::sqrt(m);
  }
  // Row-major lower triangle of M^{-1/2} K M^{-1/2}.
  std::vector<double> a(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    const int len = std::min(K.kd(), n - 1 - j);
    for (int r = 0; r <= len; ++r)
      a[static_cast<size_t>(j + r) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
          K.col(j)[r] * inv_sqrt_m[static_cast<size_t>(j + r)] *
          inv_sqrt_m[static_cast<size_t>(j)];
  }
  return symmetric_eigenvalues(std::move(a), n);
}

std::vector<double> eigenvalues_dense(const Pencil& p, int cap) {
  return eigenvalues_dense(p.K, p.M, cap);
}

int count_below_sorted(const std::vector<double>& eigs, double t) {
  return static_cast<int>(std::lower_bound(eigs.begin(), eigs.end(), t) - eigs.begin());
}

int count_interval_sorted(const std::vector<double>& eigs, double lambda, double eps) {
  const double delta = (1.0 + std::fabs(lambda) + eps) * 1e-10;
  return count_below_sorted(eigs, lambda + eps + delta) -
         count_below_sorted(eigs, lambda - eps - delta);
}

SsfCurve ssf(const Pencil& p1, const Pencil& p2, const std::vector<double>& grid,
             CountMethod method) {
  if (p1.n() != p2.n() || !p1.mesh.same_layout(p2.mesh))
    throw std::invalid_argument("spectral shift needs pencils with one dof layout");
  if (p1.M != p2.M)
    throw std::invalid_argument("spectral shift needs pencils sharing the mass matrix");
  SsfCurve curve;
  curve.lambda = grid;
  curve.xi.reserve(grid.size());
  if (method == CountMethod::DenseOracle) {
    const std::vector<double> e1 = eigenvalues_dense(p1);
    const std::vector<double> e2 = eigenvalues_dense(p2);
    for (double l : grid)
      curve.xi.push_back(count_below_sorted(e1, l) - count_below_sorted(e2, l));
    return curve;
  }
  for (double l : grid)
    curve.xi.push_back(count_below(p1, l, method) - count_below(p2, l, method));
  return curve;
}

}  // namespace qg
