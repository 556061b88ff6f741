#include "qg/dense_eig.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "qg/kernels.hpp"

// EISPACK-lineage reduction: tred without eigenvector accumulation, then
// tqli on the (d, e) pair. Row-major lower triangle throughout.

namespace qg {
namespace {

void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                    std::vector<double>& e) {
  const auto& K = kernels::active();
  const size_t N = static_cast<size_t>(n);
  d.assign(N, 0.0);
  e.assign(N, 0.0);
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    double scale = 0.0;
    double* ri = &a[static_cast<size_t>(i) * N];
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(ri[k]);
      if (scale == 0.0) {
        e[static_cast<size_t>(i)] = ri[l];
      } else {
        for (int k = 0; k <= l; ++k) {
          ri[k] /= scale;
          h += ri[k] * ri[k];
        }
        double f = ri[l];
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[static_cast<size_t>(i)] = scale * g;
        h -= f * g;
        ri[l] = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          double* rj = &a[static_cast<size_t>(j) * N];
          // g = (A u)_j using the lower triangle only
          g = K.dot(rj, ri, static_cast<size_t>(j) + 1);
          for (int k = j + 1; k <= l; ++k)
            g += a[static_cast<size_t>(k) * N + static_cast<size_t>(j)] * ri[k];
          e[static_cast<size_t>(j)] = g / h;
          f += e[static_cast<size_t>(j)] * ri[j];
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = ri[j];
          g = e[static_cast<size_t>(j)] - hh * f;
          e[static_cast<size_t>(j)] = g;
          // rank-2 update of row j (lower triangle)
          K.axpy2(-f, e.data(), -g, ri, &a[static_cast<size_t>(j) * N],
                  static_cast<size_t>(j) + 1);
        }
      }
    } else {
      e[static_cast<size_t>(i)] = ri[l];
    }
    d[static_cast<size_t>(i)] = h;
  }
  for (int i = 0; i < n; ++i)
    d[static_cast<size_t>(i)] = a[static_cast<size_t>(i) * N + static_cast<size_t>(i)];
}

}  // namespace

void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  for (int i = 1; i < n; ++i) e[static_cast<size_t>(i - 1)] = e[static_cast<size_t>(i)];
  e[static_cast<size_t>(n - 1)] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[static_cast<size_t>(m)]) +
                          std::fabs(d[static_cast<size_t>(m + 1)]);
        if (std::fabs(e[static_cast<size_t>(m)]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 80)
          throw std::runtime_error("tridiagonal QL failed to converge");
        double g = (d[static_cast<size_t>(l + 1)] - d[static_cast<size_t>(l)]) /
                   (2.0 * e[static_cast<size_t>(l)]);
        double r = std::hypot(g, 1.0);
        g = d[static_cast<size_t>(m)] - d[static_cast<size_t>(l)] +
            e[static_cast<size_t>(l)] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[static_cast<size_t>(i)];
          const double b = c * e[static_cast<size_t>(i)];
          r = std::hypot(f, g);
          e[static_cast<size_t>(i + 1)] = r;
          if (r == 0.0) {
            d[static_cast<size_t>(i + 1)] -= p;
            e[static_cast<size_t>(m)] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<size_t>(i + 1)] - p;
          r = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<size_t>(i + 1)] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[static_cast<size_t>(l)] -= p;
        e[static_cast<size_t>(l)] = g;
        e[static_cast<size_t>(m)] = 0.0;
      }
    } while (m != l);
  }
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  if (n <= 0) return {};
  if (a.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
    throw std::invalid_argument("matrix size mismatch");
  std::vector<double> d, e;
  tridiagonalize(a, n, d, e);
  tridiagonal_eigenvalues(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace qg
