#pragma once

// Data-parallel inner loops used by the decoupling machinery.
//
// Every kernel has a portable scalar reference implementation; an AVX2+FMA
// variant is compiled separately and picked at runtime when the CPU supports
// it. Variants agree to rounding (FMA contraction differs), which the
// equivalence tests pin down.

#include <cstddef>
#include <string_view>
#include <vector>

namespace symdec::kernels {

struct KernelTable {
  std::string_view name;

  // c[m x n] = a[m x k] * b[k x n], all row-major and contiguous.
  void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b,
               double* c);

  // Rows idx[0..3] of a row-major matrix with `cols` columns are replaced by
  // r4 * (those rows), r4 a row-major 4x4. Left multiplication by an
  // embedded 4x4 transform.
  void (*mix_rows4)(double* m, std::size_t cols, const std::size_t* idx, const double* r4);

  // Columns idx[0..3] of a row-major `rows` x `cols` matrix are replaced by
  // (those columns) * r4. Right multiplication by an embedded 4x4 transform.
  void (*mix_cols4)(double* m, std::size_t rows, std::size_t cols, const std::size_t* idx,
                    const double* r4);

  double (*sum_squares)(const double* x, std::size_t n);
};

const KernelTable& scalar();

/// AVX2+FMA table, or nullptr when not compiled in or not supported by the CPU.
const KernelTable* avx2();

/// Currently selected table. Defaults to the best supported variant unless
/// the SYMDEC_KERNELS environment variable names another ("scalar", "avx2").
const KernelTable& active();

/// Select a table by name; returns false (selection unchanged) if unavailable.
bool select(std::string_view name);

/// Names of the variants usable on this machine.
std::vector<std::string_view> available();

}  // namespace symdec::kernels
