#include "tenfact/simd/kernels.hpp"

namespace tenfact::simd::scalar {

void gemv_f64(const double* a, std::size_t rows, std::size_t cols,
              const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void axpy_mod_m31(std::uint32_t c, const std::uint32_t* x, std::uint32_t* y,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = reduce_m31(static_cast<std::uint64_t>(c) * x[i] + y[i]);
  }
}

}  // namespace tenfact::simd::scalar
