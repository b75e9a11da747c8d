#include "kernels_impl.hpp"

namespace symdec::kernels::detail {

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b,
                 double* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      const double* bp = b + p * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

void mix_rows4_scalar(double* m, std::size_t cols, const std::size_t* idx, const double* r4) {
  double* r0 = m + idx[0] * cols;
  double* r1 = m + idx[1] * cols;
  double* r2 = m + idx[2] * cols;
  double* r3 = m + idx[3] * cols;
  for (std::size_t j = 0; j < cols; ++j) {
    const double v0 = r0[j], v1 = r1[j], v2 = r2[j], v3 = r3[j];
    r0[j] = r4[0] * v0 + r4[1] * v1 + r4[2] * v2 + r4[3] * v3;
    r1[j] = r4[4] * v0 + r4[5] * v1 + r4[6] * v2 + r4[7] * v3;
    r2[j] = r4[8] * v0 + r4[9] * v1 + r4[10] * v2 + r4[11] * v3;
    r3[j] = r4[12] * v0 + r4[13] * v1 + r4[14] * v2 + r4[15] * v3;
  }
}

void mix_cols4_scalar(double* m, std::size_t rows, std::size_t cols, const std::size_t* idx,
                      const double* r4) {
  for (std::size_t i = 0; i < rows; ++i) {
    double* row = m + i * cols;
    const double v0 = row[idx[0]], v1 = row[idx[1]], v2 = row[idx[2]], v3 = row[idx[3]];
    for (std::size_t c = 0; c < 4; ++c) {
      row[idx[c]] = v0 * r4[c] + v1 * r4[4 + c] + v2 * r4[8 + c] + v3 * r4[12 + c];
    }
  }
}

double sum_squares_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

}  // namespace symdec::kernels::detail
