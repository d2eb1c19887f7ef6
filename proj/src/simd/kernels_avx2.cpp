// Compiled with -mavx2 -mfma; only reached when CPUID reports AVX2.
#include "tenfact/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>

namespace tenfact::simd::avx2 {

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

void gemv_f64(const double* a, std::size_t rows, std::size_t cols,
              const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + i * cols;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 8 <= cols; j += 8) {
      acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j),
                             acc0);
      acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(row + j + 4),
                             _mm256_loadu_pd(x + j + 4), acc1);
    }
    for (; j + 4 <= cols; j += 4) {
      acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j),
                             acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; j < cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void axpy_mod_m31(std::uint32_t c, const std::uint32_t* x, std::uint32_t* y,
                  std::size_t n) {
  const __m256i p = _mm256_set1_epi64x(kMersenne31);
  const __m256i cv = _mm256_set1_epi64x(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i xv = _mm256_cvtepu32_epi64(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(x + i)));
    __m256i yv = _mm256_cvtepu32_epi64(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(y + i)));
    __m256i v = _mm256_add_epi64(_mm256_mul_epu32(cv, xv), yv);
    v = _mm256_add_epi64(_mm256_and_si256(v, p), _mm256_srli_epi64(v, 31));
    v = _mm256_add_epi64(_mm256_and_si256(v, p), _mm256_srli_epi64(v, 31));
    // v < 2p here; subtract p where v >= p.
    __m256i ge = _mm256_cmpgt_epi64(v, _mm256_sub_epi64(p, _mm256_set1_epi64x(1)));
    v = _mm256_sub_epi64(v, _mm256_and_si256(ge, p));
    // Pack the low 32 bits of each lane.
    __m256i packed = _mm256_permutevar8x32_epi32(
        v, _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(y + i),
                     _mm256_castsi256_si128(packed));
  }
  for (; i < n; ++i) {
    y[i] = reduce_m31(static_cast<std::uint64_t>(c) * x[i] + y[i]);
  }
}

}  // namespace tenfact::simd::avx2

#else

namespace tenfact::simd::avx2 {

void gemv_f64(const double* a, std::size_t rows, std::size_t cols,
              const double* x, double* y) {
  scalar::gemv_f64(a, rows, cols, x, y);
}

void axpy_mod_m31(std::uint32_t c, const std::uint32_t* x, std::uint32_t* y,
                  std::size_t n) {
  scalar::axpy_mod_m31(c, x, y, n);
}

}  // namespace tenfact::simd::avx2

#endif
