#include <doctest.h>

#include "tenfact/simd/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace tenfact::simd;

TEST_SUITE("simd") {

TEST_CASE("dispatch reports a supported variant") {
  CHECK(isa_supported(Isa::kScalar));
  CHECK(isa_supported(active_isa()));
  CHECK(isa_name(Isa::kScalar) == "scalar");
}

TEST_CASE("gemv variants agree") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t rows : {1, 3, 4, 7, 16, 33})
    for (std::size_t cols : {1, 2, 5, 8, 13, 64}) {
      std::vector<double> a(rows * cols), x(cols), ys(rows), yv(rows);
      for (auto& v : a) v = u(rng);
      for (auto& v : x) v = u(rng);
      gemv_f64(Isa::kScalar, a, rows, cols, x, ys);
      for (std::size_t i = 0; i < rows; ++i) {
        double ref = 0.0;
        for (std::size_t j = 0; j < cols; ++j) ref += a[i * cols + j] * x[j];
        CHECK(std::abs(ys[i] - ref) <= 1e-12 * (1.0 + std::abs(ref)));
      }
      if (!isa_supported(Isa::kAvx2)) continue;
      gemv_f64(Isa::kAvx2, a, rows, cols, x, yv);
      for (std::size_t i = 0; i < rows; ++i)
        CHECK(std::abs(ys[i] - yv[i]) <= 1e-12 * (1.0 + std::abs(ys[i])));
    }
}

TEST_CASE("mod 2^31-1 axpy variants agree exactly") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint32_t> u(0, kMersenne31 - 1);
  for (std::size_t n : {0, 1, 7, 8, 9, 31, 1000}) {
    std::vector<std::uint32_t> x(n), y(n);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    for (std::uint32_t c : {0u, 1u, kMersenne31 - 1, u(rng)}) {
      std::vector<std::uint32_t> ys = y, yv = y;
      axpy_mod_m31(Isa::kScalar, c, x, ys);
      for (std::size_t i = 0; i < n; ++i) {
        const unsigned __int128 ref =
            (static_cast<unsigned __int128>(y[i]) + static_cast<unsigned __int128>(c) * x[i]) %
            kMersenne31;
        CHECK(ys[i] == static_cast<std::uint32_t>(ref));
      }
      if (!isa_supported(Isa::kAvx2)) continue;
      axpy_mod_m31(Isa::kAvx2, c, x, yv);
      CHECK(yv == ys);
    }
  }
}

TEST_CASE("field helpers") {
  CHECK(reduce_m31(kMersenne31) == 0);
  CHECK(mul_m31(kMersenne31 - 1, kMersenne31 - 1) == 1);
  for (std::uint32_t a : {1u, 2u, 12345u, kMersenne31 - 2})
    CHECK(mul_m31(a, inverse_m31(a)) == 1);
}

}  // TEST_SUITE
