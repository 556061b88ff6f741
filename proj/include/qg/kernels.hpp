#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace qg::kernels {

// Hot inner loops shared by the factorization, assembly and potential paths.
// All kernels work on contiguous double arrays; x/y/z may not alias.
// axpy2 exists so the rank-2 update of a 2x2 pivot touches each target
// cache line once.
struct Ops {
  const char* name;
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // z[i] += a * x[i] + b * y[i]
  void (*axpy2)(double a, const double* x, double b, const double* y,
                double* z, std::size_t n);
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += x[i] * m[i]
  void (*mul_add)(const double* x, const double* m, double* y, std::size_t n);
  // y[i] += a
  void (*add_scalar)(double a, double* y, std::size_t n);
};

// The active table. Chosen once: QGRAPH_KERNELS ("scalar", "avx2", "neon")
// if set in the environment, otherwise the widest variant the CPU supports.
const Ops& active();

// Force a table by name; returns false if that variant is unavailable here.
bool select(std::string_view name);

// All tables compiled into this binary, reference first. Used by the
// equivalence tests.
std::vector<const Ops*> available();

namespace detail {
const Ops* scalar_table();
const Ops* avx2_table();  // nullptr when unsupported at runtime
const Ops* neon_table();  // nullptr off aarch64
}

}  // namespace qg::kernels
