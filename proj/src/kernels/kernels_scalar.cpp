#include "qg/kernels.hpp"

// Reference kernels. These define the semantics the SIMD variants are
// tested against; keep them free of manual unrolling so the loops stay
// obviously correct.

namespace qg::kernels {
namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy2_scalar(double a, const double* x, double b, const double* y,
                  double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] += a * x[i] + b * y[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void mul_add_scalar(const double* x, const double* m, double* y,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += x[i] * m[i];
}

void add_scalar_scalar(double a, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a;
}

const Ops table = {
    "scalar", axpy_scalar, axpy2_scalar, dot_scalar, mul_add_scalar,
    add_scalar_scalar,
};

}  // namespace

const Ops* detail::scalar_table() { return &table; }

}  // namespace qg::kernels
