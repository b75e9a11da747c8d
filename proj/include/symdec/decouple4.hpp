#pragma once

// Geometric decoupling of a single 4x4 symplex by sequences of elementary
// symplectic rotations and boosts chosen from the EMEQ vectors.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symdec/emeq.hpp"
#include "symdec/error.hpp"
#include "symdec/matrix.hpp"
#include "symdec/transform.hpp"

namespace symdec {

enum class Form { BlockDiagonal, HamiltonianForm, NormalForm, ComplexCanonical };

std::string_view to_string(Form f);

struct DecoupleOptions {
  double step_tol = 1e-14;   // steps with |eps| (or both atan arguments) below this are skipped
  double post_tol = 1e-10;   // postcondition checks, relative to max(1, ||F||)
  double cross_tol = 1e-7;   // closed-form cross-check
};

/// A validated 4x4 symplex with its EMEQ state.
struct Symplex4 {
  Matrix matrix;
  EmeqState state;

  static Symplex4 make(Matrix m, double tol = kDefaultPredicateTol);
  /// No validation; the state is recomputed from the matrix.
  static Symplex4 unchecked(Matrix m);
};

/// Closed-form primed coefficients (energy', P_x', P_z', E_x', E_z', B_y')
/// predicted from the input, next to the pipeline values.
struct ClosedFormCheck {
  std::array<double, 6> predicted{};
  std::array<double, 6> pipeline{};
  double max_deviation = 0.0;
  bool agrees = true;
};

struct Issue {
  ErrorCode code;
  std::string detail;
};

struct DecoupleResult {
  SymplecticTransform transform;
  Matrix input;
  Symplex4 final;
  Form form = Form::BlockDiagonal;
  /// Largest deviation from the target pattern of `form` (off-block entries;
  /// plus diagonal entries for the Hamiltonian form; plus block asymmetry for
  /// the normal form; non-canonical RDM coefficients for the complex form).
  double residual = 0.0;
  SpectralInvariants invariants;  // of the input
  Frequency omega1;               // sqrt(K1 + 2 sqrt K2)
  Frequency omega2;               // sqrt(K1 - 2 sqrt K2)
  /// Per-block signed frequency once in normal form: sign(alpha) sqrt(alpha beta).
  std::optional<std::array<double, 2>> block_omega;
  std::optional<double> rho;  // complex quadruple radius (K1^2 + 4|K2|)^(1/4)
  std::optional<ClosedFormCheck> closed_form;
  std::vector<Issue> issues;
};

/// Pattern residuals of a 4x4 matrix.
double hamiltonian_residual(const Matrix& f);
double normal_residual(const Matrix& f);
double canonical_residual(const Matrix& f);

DecoupleResult decouple_block_diagonal(const Matrix& f, const DecoupleOptions& opt = {});
DecoupleResult to_hamiltonian_form(const DecoupleResult& r, const DecoupleOptions& opt = {});
DecoupleResult to_normal_form(const DecoupleResult& r, const DecoupleOptions& opt = {});

/// Block-diagonal, then Hamiltonian, then normal form.
DecoupleResult decouple_to_normal(const Matrix& f, const DecoupleOptions& opt = {});

using ComplexMatrix4 = std::array<std::array<std::complex<double>, 4>, 4>;

struct Eigensystem {
  ComplexMatrix4 vectors{};                        // columns are eigenvectors
  std::array<std::complex<double>, 4> values{};    // (i w1, -i w1, i w2, -i w2)
  double residual = 0.0;                           // max |F E - E Lambda|
};

/// The unitary symplectic E0 = (1 - gamma0 + i gamma3 + i gamma6) / 2.
ComplexMatrix4 diagonalizer_e0();

Eigensystem diagonalize(const DecoupleResult& r);

DecoupleResult complex_low_energy(const Matrix& f, const DecoupleOptions& opt = {});
DecoupleResult complex_intermediate(const Matrix& f, const DecoupleOptions& opt = {});

}  // namespace symdec
