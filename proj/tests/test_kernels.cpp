#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qg/kernels.hpp"

using namespace qg;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match direct arithmetic") {
  const kernels::Ops* ref = kernels::detail::scalar_table();
  std::vector<double> y{1.0, 2.0, 3.0};
  const std::vector<double> x{10.0, 20.0, 30.0};
  ref->axpy(0.5, x.data(), y.data(), 3);
  CHECK(y == std::vector<double>{6.0, 12.0, 18.0});

  CHECK(ref->dot(x.data(), y.data(), 3) == doctest::Approx(60 + 240 + 540));

  std::vector<double> z{0.0, 0.0, 0.0};
  ref->axpy2(1.0, x.data(), -1.0, y.data(), z.data(), 3);
  CHECK(z == std::vector<double>{4.0, 8.0, 12.0});

  ref->add_scalar(2.0, z.data(), 3);
  CHECK(z == std::vector<double>{6.0, 10.0, 14.0});

  std::vector<double> w{1.0, 1.0, 1.0};
  ref->mul_add(x.data(), y.data(), w.data(), 3);
  CHECK(w == std::vector<double>{61.0, 241.0, 541.0});
}

TEST_CASE("simd variants agree with the scalar reference") {
  const kernels::Ops* ref = kernels::detail::scalar_table();
  std::mt19937_64 rng(42);

  for (const kernels::Ops* ops : kernels::available()) {
    CAPTURE(ops->name);
    // Lengths around the vector width to exercise tails.
    for (size_t n : {0, 1, 3, 4, 5, 7, 8, 13, 64, 257}) {
      const std::vector<double> x = random_vec(rng, n);
      const std::vector<double> m = random_vec(rng, n);
      const std::vector<double> y0 = random_vec(rng, n);
      const double a = 0.7306116;
      const double b = -1.25;

      std::vector<double> ya = y0, yb = y0;
      ref->axpy(a, x.data(), ya.data(), n);
      ops->axpy(a, x.data(), yb.data(), n);
      for (size_t i = 0; i < n; ++i)
        CHECK(yb[i] == doctest::Approx(ya[i]).epsilon(1e-14));

      std::vector<double> za = y0, zb = y0;
      ref->axpy2(a, x.data(), b, m.data(), za.data(), n);
      ops->axpy2(a, x.data(), b, m.data(), zb.data(), n);
      for (size_t i = 0; i < n; ++i)
        CHECK(zb[i] == doctest::Approx(za[i]).epsilon(1e-14));

      const double da = ref->dot(x.data(), m.data(), n);
      const double db = ops->dot(x.data(), m.data(), n);
      CHECK(db == doctest::Approx(da).epsilon(1e-12));

      std::vector<double> wa = y0, wb = y0;
      ref->mul_add(x.data(), m.data(), wa.data(), n);
      ops->mul_add(x.data(), m.data(), wb.data(), n);
      for (size_t i = 0; i < n; ++i)
        CHECK(wb[i] == doctest::Approx(wa[i]).epsilon(1e-14));

      std::vector<double> sa = y0, sb = y0;
      ref->add_scalar(a, sa.data(), n);
      ops->add_scalar(a, sb.data(), n);
      CHECK(sa == sb);  // pure additions, bit-identical
    }
  }
}

TEST_CASE("kernel selection") {
  const std::string before = kernels::active().name;
  CHECK(kernels::select("scalar"));
  CHECK(std::string(kernels::active().name) == "scalar");
  CHECK_FALSE(kernels::select("not-a-kernel"));
  CHECK(kernels::select("auto"));
  CHECK(std::string(kernels::active().name) == before);
}
