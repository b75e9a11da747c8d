#pragma once

// Electromechanical equivalence: a 4x4 symplex F = sum_{k<10} f_k gamma_k is
// read as an energy E = f0 and three vectors P = f1..3, E = f4..6, B = f7..9.

#include <array>
#include <string_view>

#include "symdec/dirac.hpp"
#include "symdec/matrix.hpp"

namespace symdec {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm2(const Vec3& a);

struct EmeqState {
  double energy = 0.0;
  Vec3 p{};
  Vec3 e{};
  Vec3 b{};
};

struct MassComponents {
  double mr = 0.0;  // E.B
  double mg = 0.0;  // B.P
  double mb = 0.0;  // E.P
};

struct AuxVectors {
  Vec3 r{};  // energy*P + B x E
  Vec3 g{};  // energy*E + P x B
  Vec3 b{};  // energy*B + E x P
};

enum class Classification { TwoImaginaryPairs, TwoRealPairs, MixedRealImaginary, ComplexQuadruple };

/// Nature of one eigenvalue pair: +-i w (oscillating), +-w (hyperbolic),
/// a double zero, or part of a complex quadruple.
enum class FrequencyNature { Oscillating, Hyperbolic, Zero, Complex };

struct Frequency {
  double value = 0.0;  // magnitude
  FrequencyNature nature = FrequencyNature::Zero;
};

struct SpectralInvariants {
  double k1 = 0.0;
  double k2 = 0.0;
  double det = 0.0;  // K1^2 - 4 K2
  Frequency w1;      // sqrt(K1 + 2 sqrt(K2))
  Frequency w2;      // sqrt(K1 - 2 sqrt(K2))
  Classification classification = Classification::TwoImaginaryPairs;
  bool degenerate = false;  // |K2| < 1e-12 max(1, K1^2)
  bool stable = false;      // K2 > 0 and K1 > 2 sqrt(K2)
};

std::string_view to_string(Classification c);
std::string_view to_string(FrequencyNature n);

EmeqState emeq_from_coefficients(const RdmCoefficients& c);
RdmCoefficients to_coefficients(const EmeqState& s);
Matrix to_matrix(const EmeqState& s);

/// Throws NotASymplex when any cosymplex coefficient exceeds
/// tol * max(1, ||F||_F).
EmeqState emeq_from_symplex(const Matrix& f, double tol = kDefaultPredicateTol);

MassComponents mass_components(const EmeqState& s);
AuxVectors aux_vectors(const EmeqState& s);

/// K2 = b^2 - M_r^2 - M_g^2.
double k2_short_form(const EmeqState& s);
/// K2 = (E B + E x P)^2 - (E.B)^2 - (P.B)^2 expanded directly.
double k2_long_form(const EmeqState& s);

SpectralInvariants spectral_invariants(const EmeqState& s);

/// Tr(S^k) for k = 1..4; any square matrix.
std::array<double, 4> lax_invariants(const Matrix& s);

}  // namespace symdec
