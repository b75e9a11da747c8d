#pragma once

// One-turn matrix analysis on top of the decoupling machinery: tunes,
// matched second moments, the effective (averaged) force matrix, and the
// spinor expectation values of the Dirac algebra.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "symdec/decouple4.hpp"
#include "symdec/dirac.hpp"
#include "symdec/jacobi.hpp"
#include "symdec/transform.hpp"

namespace symdec {

struct Tune {
  double cosine = 1.0;     // cos(w tau), from the block trace
  double sine = 0.0;       // sin(w tau), signed, from the decoupled symplex part
  double phase = 0.0;      // atan2(sine, cosine) in (-pi, pi]
  double tune = 0.0;       // |phase| / 2 pi in [0, 1/2]
  bool stable = true;      // |cosine| <= 1 and an oscillating block
  bool branch_ambiguous = false;  // phase at 0 or pi
};

struct OpticsOptions {
  double symplectic_tol = 1e-8;
  double branch_tol = 1e-9;  // |sin| below this flags a tune at 0 or 1/2
  JacobiOptions jacobi;
  DecoupleOptions decouple;
};

struct OpticsReport {
  std::size_t n_pairs = 0;
  double period = 1.0;
  SymplecticTransform transform;  // decouples the symplex part of M
  Matrix decoupled;               // R M R^{-1}
  Matrix decoupled_symplex;       // R M_s R^{-1}
  std::vector<Tune> tunes;        // by decoupled block index
  bool normal_frame = false;      // symplex part reached normal form
  /// Two degrees of freedom: cos1 + cos2 = Tr(M~)/2 and
  /// cos1 - cos2 = -Tr(M~ g12 + g12 M~)/4.
  std::optional<std::array<double, 2>> cosine_sum_difference;
  double symplectic_residual = 0.0;
  double off_block_residual = 0.0;            // max |off-block| of R M R^{-1}
  double cosymplex_off_block_residual = 0.0;  // same for the cosymplex part
  std::optional<IterationStats> jacobi_stats;
  std::vector<Issue> issues;
};

/// Throws NotSymplectic when ||M J M^T - J||_F > symplectic_tol max(1, ||M||^2).
OpticsReport analyze_one_turn(const TransferMatrix& m, const OpticsOptions& opt = {});

/// Matched sigma for per-block emittances. Throws UnstableSystem for an
/// unstable block and BranchAmbiguity for a tune at 0 or 1/2.
Matrix matched_sigma(const TransferMatrix& m, std::span<const double> emittances,
                     const OpticsOptions& opt = {});
Matrix matched_sigma(const OpticsReport& report, std::span<const double> emittances);

struct EffectiveForce {
  Matrix force;
  bool branch_ambiguity = false;
  double reconstruction_residual = 0.0;  // max |exp(F tau) - M|
};

/// Principal-branch (1/tau) ln M through the decoupled frame.
EffectiveForce effective_force(const TransferMatrix& m, const OpticsOptions& opt = {});

Matrix propagate_sigma(const Matrix& sigma, const TransferMatrix& m);

/// Tr((sigma J)^k), k = 1..4.
std::array<double, 4> sigma_invariants(const Matrix& sigma);

struct SpinorObservables {
  std::array<double, 16> f{};  // (1/2) psi^T g0 g_k psi
  std::array<double, 16> g{};  // psi^T g0 (g_k F + F g_k) psi
};

SpinorObservables spinor_observables(const std::array<double, 4>& psi, const Matrix& f);

/// Closed forms of g10..g15 in terms of the f's and the EMEQ of F.
std::array<double, 6> cosymplex_g_closed_form(const std::array<double, 16>& fk,
                                              const EmeqState& s);

/// d g_k / dt along psi' = F psi, k = 10..15, exact bilinear.
std::array<double, 6> cosymplex_gdot_exact(const std::array<double, 4>& psi, const Matrix& f);

/// Closed forms of the same derivatives.
std::array<double, 6> cosymplex_gdot_closed_form(const std::array<double, 16>& fk,
                                                 const EmeqState& s);

}  // namespace symdec
