#pragma once

// The 16 real Dirac matrices (RDMs) of the 4x4 real Clifford algebra and the
// expansion of arbitrary 4x4 matrices over them.
//
// Ordering: gamma0..gamma3 basic, gamma4..gamma6 "electric" (gamma0 gamma_k),
// gamma7..gamma9 "magnetic", gamma10..gamma14 cosymplices, gamma15 = 1.
// Indices 0..9 are symplices (Hamiltonian), 10..15 cosymplices.

#include <array>
#include <cstdint>
#include <utility>

#include "symdec/matrix.hpp"

namespace symdec {

inline constexpr double kDefaultPredicateTol = 1e-10;

/// Checked index into the 16 RDMs.
class GammaIndex {
 public:
  constexpr explicit GammaIndex(int k) : k_(k) {}
  static GammaIndex checked(int k);
  constexpr int value() const noexcept { return k_; }
  constexpr bool is_symplex() const noexcept { return k_ <= 9; }

 private:
  int k_;
};

using IntMatrix4 = std::array<std::array<std::int8_t, 4>, 4>;

/// Integer entries of gamma_k (all in {-1, 0, 1}).
const IntMatrix4& gamma_int(int k);

/// gamma_k as a real matrix. Throws IndexOutOfRange unless 0 <= k <= 15.
Matrix gamma(int k);
inline Matrix gamma(GammaIndex k) { return gamma(k.value()); }

/// +1 if gamma_k^2 = 1, -1 if gamma_k^2 = -1.
int gamma_square_sign(int k);

/// Exact integer product, used to verify the defining identities.
IntMatrix4 int_product(const IntMatrix4& a, const IntMatrix4& b);

/// Verifies every product identity of the basis in integer arithmetic
/// (gamma4 = gamma0 gamma1, ..., gamma14 = gamma0 gamma1 gamma2 gamma3 and the
/// alternative forms of gamma7..gamma13) and the anticommutation of the four
/// basic matrices. Returns the number of violated identities.
int verify_basis_identities();

using RdmCoefficients = std::array<double, 16>;

/// m_k = Tr(gamma_k^2) Tr((M gamma_k + gamma_k M) / 32).
RdmCoefficients rdm_coefficients(const Matrix& m);

/// Sum_k c_k gamma_k.
Matrix from_coefficients(const RdmCoefficients& c);

bool is_symplex(const Matrix& m, double tol = kDefaultPredicateTol);
bool is_cosymplex(const Matrix& m, double tol = kDefaultPredicateTol);

/// ||M^T - J M J||_F for any even square matrix (J the symplectic unit).
double symplex_residual(const Matrix& m);
double cosymplex_residual(const Matrix& m);

/// (M_s, M_c) with M_s = (M + J M^T J)/2 a symplex and M_c = (M - J M^T J)/2 a
/// cosymplex. Works for any even dimension.
std::pair<Matrix, Matrix> symplex_cosymplex_split(const Matrix& m);

}  // namespace symdec
