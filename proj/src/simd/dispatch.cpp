#include "tenfact/simd/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tenfact::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  const char* forced = std::getenv("TENFACT_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar") return Isa::kScalar;
  return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

void check_sizes(std::size_t a, std::size_t rows, std::size_t cols,
                 std::size_t x, std::size_t y) {
  if (a < rows * cols || x < cols || y < rows) {
    throw std::invalid_argument("gemv_f64: span sizes do not match shape");
  }
}

}  // namespace

std::string_view isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

bool isa_supported(Isa isa) {
  return isa == Isa::kScalar || cpu_has_avx2();
}

void gemv_f64(Isa isa, std::span<const double> a, std::size_t rows,
              std::size_t cols, std::span<const double> x,
              std::span<double> y) {
  check_sizes(a.size(), rows, cols, x.size(), y.size());
  if (isa == Isa::kAvx2 && isa_supported(Isa::kAvx2)) {
    avx2::gemv_f64(a.data(), rows, cols, x.data(), y.data());
  } else {
    scalar::gemv_f64(a.data(), rows, cols, x.data(), y.data());
  }
}

void gemv_f64(std::span<const double> a, std::size_t rows, std::size_t cols,
              std::span<const double> x, std::span<double> y) {
  gemv_f64(active_isa(), a, rows, cols, x, y);
}

void axpy_mod_m31(Isa isa, std::uint32_t c, std::span<const std::uint32_t> x,
                  std::span<std::uint32_t> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("axpy_mod_m31: length mismatch");
  }
  if (isa == Isa::kAvx2 && isa_supported(Isa::kAvx2)) {
    avx2::axpy_mod_m31(c, x.data(), y.data(), x.size());
  } else {
    scalar::axpy_mod_m31(c, x.data(), y.data(), x.size());
  }
}

void axpy_mod_m31(std::uint32_t c, std::span<const std::uint32_t> x,
                  std::span<std::uint32_t> y) {
  axpy_mod_m31(active_isa(), c, x, y);
}

std::uint32_t inverse_m31(std::uint32_t a) {
  // Fermat: a^(p-2).
  std::uint32_t result = 1;
  std::uint32_t base = a;
  std::uint32_t e = kMersenne31 - 2;
  while (e != 0) {
    if (e & 1u) result = mul_m31(result, base);
    base = mul_m31(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace tenfact::simd
