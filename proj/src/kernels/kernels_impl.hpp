#pragma once

#include <cstddef>

namespace symdec::kernels::detail {

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b,
                 double* c);
void mix_rows4_scalar(double* m, std::size_t cols, const std::size_t* idx, const double* r4);
void mix_cols4_scalar(double* m, std::size_t rows, std::size_t cols, const std::size_t* idx,
                      const double* r4);
double sum_squares_scalar(const double* x, std::size_t n);

#if defined(SYMDEC_HAVE_AVX2)
void gemm_avx2(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b,
               double* c);
void mix_rows4_avx2(double* m, std::size_t cols, const std::size_t* idx, const double* r4);
void mix_cols4_avx2(double* m, std::size_t rows, std::size_t cols, const std::size_t* idx,
                    const double* r4);
double sum_squares_avx2(const double* x, std::size_t n);
#endif

}  // namespace symdec::kernels::detail
