#pragma once

// Jacobi-like block diagonalization of 2n x 2n symplices: repeatedly pick the
// coupling block with the largest mean square amplitude and decouple the
// 4x4 symplex formed by the two pairs involved.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "symdec/decouple4.hpp"
#include "symdec/matrix.hpp"
#include "symdec/transform.hpp"

namespace symdec {

struct PivotRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  double off_norm_before = 0.0;  // sum of off-block Frobenius norms before the step
};

struct IterationStats {
  std::size_t pivot_steps = 0;        // 4x4 decouplings
  std::size_t hamiltonian_steps = 0;  // per-pair rotations applied afterwards
  std::size_t scaling_steps = 0;      // per-pair normal-form scalings
  std::vector<PivotRecord> history;
  double initial_residual = 0.0;
  double final_residual = 0.0;  // off-block norm sum / ||F||_F
};

enum class JacobiTarget { BlockDiagonal, HamiltonianForm, NormalForm };

struct JacobiOptions {
  double tol = 1e-12;
  std::size_t max_steps = 0;  // 0: 40 n^2
  JacobiTarget target = JacobiTarget::BlockDiagonal;
  DecoupleOptions pivot;
};

struct JacobiResult {
  SymplecticTransform transform;
  Matrix final;
  IterationStats stats;
  std::vector<Issue> issues;
  /// Signed per-pair frequencies when the normal form was reached.
  std::vector<double> pair_omega;
  bool normal = false;
};

/// Throws NotASymplex, MaxStepsExceeded, or PivotComplex (with the pivot
/// pair attached) when a 4x4 subproblem has complex eigenvalues.
JacobiResult jacobi_decouple(const Matrix& f, const JacobiOptions& opt = {});

/// Symmetric A with A_ii = n + x, A_ij = x - 1/2 and x uniform in [0, 1)
/// from std::mt19937_64(seed) as (bits >> 11) * 2^-53, upper triangle filled
/// row by row; returns F = J A.
Matrix random_test_symplex(std::size_t n, std::uint64_t seed);

/// (i, j) entry: mean of the squared entries of block (i, j); zero diagonal.
Matrix off_block_norms(const Matrix& f);

/// Sum of the Frobenius norms of all off-diagonal 2x2 blocks.
double off_block_norm_sum(const Matrix& f);

/// Reference pivot-step count 5 n (n - 2) / 2.
double reference_step_count(std::size_t n);

}  // namespace symdec
