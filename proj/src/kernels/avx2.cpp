// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace symdec::kernels::detail {

void gemm_avx2(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b,
               double* c) {
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    const double* ai = a + i * k;
    std::size_t j = 0;
    for (; j < n4; j += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        acc = _mm256_fmadd_pd(_mm256_set1_pd(ai[p]), _mm256_loadu_pd(b + p * n + j), acc);
      }
      _mm256_storeu_pd(ci + j, acc);
    }
    for (; j < n; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += ai[p] * b[p * n + j];
      ci[j] = s;
    }
  }
}

void mix_rows4_avx2(double* m, std::size_t cols, const std::size_t* idx, const double* r4) {
  double* r[4] = {m + idx[0] * cols, m + idx[1] * cols, m + idx[2] * cols, m + idx[3] * cols};
  const std::size_t c4 = cols & ~std::size_t{3};
  std::size_t j = 0;
  for (; j < c4; j += 4) {
    const __m256d v0 = _mm256_loadu_pd(r[0] + j);
    const __m256d v1 = _mm256_loadu_pd(r[1] + j);
    const __m256d v2 = _mm256_loadu_pd(r[2] + j);
    const __m256d v3 = _mm256_loadu_pd(r[3] + j);
    for (int o = 0; o < 4; ++o) {
      const double* w = r4 + 4 * o;
      __m256d acc = _mm256_mul_pd(_mm256_set1_pd(w[0]), v0);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(w[1]), v1, acc);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(w[2]), v2, acc);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(w[3]), v3, acc);
      _mm256_storeu_pd(r[o] + j, acc);
    }
  }
  for (; j < cols; ++j) {
    const double v0 = r[0][j], v1 = r[1][j], v2 = r[2][j], v3 = r[3][j];
    for (int o = 0; o < 4; ++o) {
      const double* w = r4 + 4 * o;
      r[o][j] = w[0] * v0 + w[1] * v1 + w[2] * v2 + w[3] * v3;
    }
  }
}

// One row at a time: the four selected entries form exactly one __m256d.
void mix_cols4_avx2(double* m, std::size_t rows, std::size_t cols, const std::size_t* idx,
                    const double* r4) {
  const __m256d w0 = _mm256_loadu_pd(r4);
  const __m256d w1 = _mm256_loadu_pd(r4 + 4);
  const __m256d w2 = _mm256_loadu_pd(r4 + 8);
  const __m256d w3 = _mm256_loadu_pd(r4 + 12);
  alignas(32) double out[4];
  for (std::size_t i = 0; i < rows; ++i) {
    double* row = m + i * cols;
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(row[idx[0]]), w0);
    acc = _mm256_fmadd_pd(_mm256_set1_pd(row[idx[1]]), w1, acc);
    acc = _mm256_fmadd_pd(_mm256_set1_pd(row[idx[2]]), w2, acc);
    acc = _mm256_fmadd_pd(_mm256_set1_pd(row[idx[3]]), w3, acc);
    _mm256_store_pd(out, acc);
    row[idx[0]] = out[0];
    row[idx[1]] = out[1];
    row[idx[2]] = out[2];
    row[idx[3]] = out[3];
  }
}

double sum_squares_avx2(const double* x, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

}  // namespace symdec::kernels::detail
