#include "qg/kernels.hpp"

// NEON variants for aarch64. NEON is baseline there, so no runtime probe.

#if defined(__aarch64__)

#include <arm_neon.h>

namespace qg::kernels {
namespace {

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vy = vld1q_f64(y + i);
    vy = vfmaq_f64(vy, va, vld1q_f64(x + i));
    vst1q_f64(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy2_neon(double a, const double* x, double b, const double* y,
                double* z, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vz = vld1q_f64(z + i);
    vz = vfmaq_f64(vz, va, vld1q_f64(x + i));
    vz = vfmaq_f64(vz, vb, vld1q_f64(y + i));
    vst1q_f64(z + i, vz);
  }
  for (; i < n; ++i) z[i] += a * x[i] + b * y[i];
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void mul_add_neon(const double* x, const double* m, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vy = vld1q_f64(y + i);
    vy = vfmaq_f64(vy, vld1q_f64(x + i), vld1q_f64(m + i));
    vst1q_f64(y + i, vy);
  }
  for (; i < n; ++i) y[i] += x[i] * m[i];
}

void add_scalar_neon(double a, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), va));
  for (; i < n; ++i) y[i] += a;
}

const Ops table = {
    "neon", axpy_neon, axpy2_neon, dot_neon, mul_add_neon, add_scalar_neon,
};

}  // namespace

const Ops* detail::neon_table() { return &table; }

}  // namespace qg::kernels

#else

namespace qg::kernels {
const Ops* detail::neon_table() { return nullptr; }
}

#endif
