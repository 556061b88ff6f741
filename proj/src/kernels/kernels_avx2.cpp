#include "qg/kernels.hpp"

// AVX2+FMA variants. Compiled with per-function target attributes so the
// TU builds without global -mavx2; dispatch.cpp only installs the table
// after a cpuid check.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace qg::kernels {
namespace {

#define QG_AVX2 __attribute__((target("avx2,fma")))

QG_AVX2 void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

QG_AVX2 void axpy2_avx2(double a, const double* x, double b, const double* y,
                        double* z, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vz = _mm256_loadu_pd(z + i);
    vz = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vz);
    vz = _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), vz);
    _mm256_storeu_pd(z + i, vz);
  }
  for (; i < n; ++i) z[i] += a * x[i] + b * y[i];
}

QG_AVX2 double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  acc0 = _mm256_add_pd(acc0, acc1);
  __m128d lo = _mm256_castpd256_pd128(acc0);
  __m128d hi = _mm256_extractf128_pd(acc0, 1);
  lo = _mm_add_pd(lo, hi);
  double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

QG_AVX2 void mul_add_avx2(const double* x, const double* m, double* y,
                          std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(m + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += x[i] * m[i];
}

QG_AVX2 void add_scalar_avx2(double a, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), va));
  for (; i < n; ++i) y[i] += a;
}

const Ops table = {
    "avx2", axpy_avx2, axpy2_avx2, dot_avx2, mul_add_avx2, add_scalar_avx2,
};

}  // namespace

const Ops* detail::avx2_table() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return &table;
  return nullptr;
}

}  // namespace qg::kernels

#else

namespace qg::kernels {
const Ops* detail::avx2_table() { return nullptr; }
}

#endif
