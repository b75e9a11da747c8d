#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "symdec/matrix.hpp"

namespace symdec {

/// One elementary factor R_b(angle) = exp(gamma_b angle / 2), acting on the
/// degree-of-freedom pairs (block_i, block_j) of a 2n-dimensional space.
struct TransformStep {
  int generator = 0;
  double angle = 0.0;
  std::size_t block_i = 0;
  std::size_t block_j = 1;
  bool skipped = false;  // |angle| below the step tolerance; not applied
};

/// Accumulated similarity R with its inverse; F -> R F R^{-1}.
struct SymplecticTransform {
  Matrix r;
  Matrix r_inv;
  std::vector<TransformStep> log;

  static SymplecticTransform identity(std::size_t dim);
  std::size_t dim() const noexcept { return r.rows(); }
  std::size_t applied_steps() const;
};

/// True for the rotation generators (gamma_b^2 = -1): b in {0, 7, 8, 9}.
bool is_rotation_generator(int b);

/// (R, R^{-1}) of exp(gamma_b eps / 2) in closed form; b in 0..9.
std::pair<Matrix, Matrix> basic_matrices(int b, double eps);

SymplecticTransform basic_transform(int b, double eps);

Matrix apply_similarity(const SymplecticTransform& t, const Matrix& f);

/// t2 after t1: R = R2 R1.
SymplecticTransform compose(const SymplecticTransform& t2, const SymplecticTransform& t1);

SymplecticTransform inverse(const SymplecticTransform& t);

/// Places a 4x4 transform onto pairs (i, j) of an n-pair space.
SymplecticTransform embed_4x4(const SymplecticTransform& t, std::size_t i, std::size_t j,
                              std::size_t n_pairs);

/// In-place update for a transform acting on pairs (i, j): f <- R f R^{-1}
/// and acc <- R acc, through the mix_rows4/mix_cols4 kernels.
void apply_embedded(Matrix& f, const Matrix& r4, const Matrix& r4_inv, std::size_t i,
                    std::size_t j);
void accumulate_embedded(SymplecticTransform& acc, const Matrix& r4, const Matrix& r4_inv,
                         std::size_t i, std::size_t j);

/// 4x4 matrices (R, R^{-1}) that rotate pair k of the (i, j) embedding by
/// phi, leaving the other pair fixed: exp(J phi) on that pair.
/// Equivalent to R_0(phi) R_8(+-phi).
std::pair<Matrix, Matrix> pair_rotation(bool first_pair, double phi);

/// Diag(e^{-s}, e^{s}) on one pair; equivalent to R_3(s) R_4(+-s).
std::pair<Matrix, Matrix> pair_scaling(bool first_pair, double s);

/// Rebuilds R from a log over n pairs, skipping skipped steps.
SymplecticTransform replay(std::span<const TransformStep> log, std::size_t n_pairs);

/// ||R J R^T - J||_F and ||R R^{-1} - 1||_F.
double symplectic_defect(const SymplecticTransform& t);
double inverse_defect(const SymplecticTransform& t);

struct TransferMatrix {
  Matrix m;
  double period = 1.0;
  double symplectic_residual = 0.0;
};

/// exp(F s) by scaling and squaring of a Taylor series. The symplecticity
/// residual is reported, never corrected.
TransferMatrix matrix_exponential(const Matrix& f, double s);

}  // namespace symdec
