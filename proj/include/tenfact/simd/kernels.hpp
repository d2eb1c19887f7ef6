#pragma once

// Data-parallel inner loops. Every kernel has a portable scalar reference
// and an AVX2 variant; the variant is chosen once at runtime from CPUID and
// may be forced with TENFACT_SIMD=scalar|avx2.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace tenfact::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// Best variant supported by this CPU (and allowed by TENFACT_SIMD).
Isa active_isa();
bool isa_supported(Isa isa);

// 2^31 - 1. Arithmetic in the rank kernels is modulo this prime.
inline constexpr std::uint32_t kMersenne31 = 0x7fffffffu;

// y = A x for a dense row-major rows x cols matrix.
void gemv_f64(std::span<const double> a, std::size_t rows, std::size_t cols,
              std::span<const double> x, std::span<double> y);
void gemv_f64(Isa isa, std::span<const double> a, std::size_t rows,
              std::size_t cols, std::span<const double> x,
              std::span<double> y);

// y[i] = (y[i] + c * x[i]) mod (2^31 - 1); entries of x, y and c in [0, p).
void axpy_mod_m31(std::uint32_t c, std::span<const std::uint32_t> x,
                  std::span<std::uint32_t> y);
void axpy_mod_m31(Isa isa, std::uint32_t c, std::span<const std::uint32_t> x,
                  std::span<std::uint32_t> y);

namespace scalar {
void gemv_f64(const double* a, std::size_t rows, std::size_t cols,
              const double* x, double* y);
void axpy_mod_m31(std::uint32_t c, const std::uint32_t* x, std::uint32_t* y,
                  std::size_t n);
}  // namespace scalar

namespace avx2 {
void gemv_f64(const double* a, std::size_t rows, std::size_t cols,
              const double* x, double* y);
void axpy_mod_m31(std::uint32_t c, const std::uint32_t* x, std::uint32_t* y,
                  std::size_t n);
}  // namespace avx2

// Scalar helpers shared by both variants.
inline std::uint32_t reduce_m31(std::uint64_t v) {
  v = (v & kMersenne31) + (v >> 31);
  v = (v & kMersenne31) + (v >> 31);
  return static_cast<std::uint32_t>(v >= kMersenne31 ? v - kMersenne31 : v);
}

inline std::uint32_t mul_m31(std::uint32_t a, std::uint32_t b) {
  return reduce_m31(static_cast<std::uint64_t>(a) * b);
}

std::uint32_t inverse_m31(std::uint32_t a);

}  // namespace tenfact::simd
