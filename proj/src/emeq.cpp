#include "symdec/emeq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symdec/error.hpp"

namespace symdec {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm2(const Vec3& a) { return dot(a, a); }

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::TwoImaginaryPairs: return "TwoImaginaryPairs";
    case Classification::TwoRealPairs: return "TwoRealPairs";
    case Classification::MixedRealImaginary: return "MixedRealImaginary";
    case Classification::ComplexQuadruple: return "ComplexQuadruple";
  }
  return "Unknown";
}

std::string_view to_string(FrequencyNature n) {
  switch (n) {
    case FrequencyNature::Oscillating: return "oscillating";
    case FrequencyNature::Hyperbolic: return "hyperbolic";
    case FrequencyNature::Zero: return "zero";
    case FrequencyNature::Complex: return "complex";
  }
  return "unknown";
}

EmeqState emeq_from_coefficients(const RdmCoefficients& c) {
  EmeqState s;
  s.energy = c[0];
  for (std::size_t i = 0; i < 3; ++i) {
    s.p[i] = c[1 + i];
    s.e[i] = c[4 + i];
    s.b[i] = c[7 + i];
  }
  return s;
}

RdmCoefficients to_coefficients(const EmeqState& s) {
  RdmCoefficients c{};
  c[0] = s.energy;
  for (std::size_t i = 0; i < 3; ++i) {
    c[1 + i] = s.p[i];
    c[4 + i] = s.e[i];
    c[7 + i] = s.b[i];
  }
  return c;
}

Matrix to_matrix(const EmeqState& s) { return from_coefficients(to_coefficients(s)); }

EmeqState emeq_from_symplex(const Matrix& f, double tol) {
  const RdmCoefficients c = rdm_coefficients(f);
  const double scale = tol * std::max(1.0, f.frobenius_norm());
  for (std::size_t k = 10; k < 16; ++k) {
    if (std::abs(c[k]) > scale)
      throw Error(ErrorCode::NotASymplex,
                  "coefficient of gamma" + std::to_string(k) + " is " + std::to_string(c[k]));
  }
  return emeq_from_coefficients(c);
}

MassComponents mass_components(const EmeqState& s) {
  return {dot(s.e, s.b), dot(s.b, s.p), dot(s.e, s.p)};
}

AuxVectors aux_vectors(const EmeqState& s) {
  AuxVectors a;
  const Vec3 be = cross(s.b, s.e);
  const Vec3 pb = cross(s.p, s.b);
  const Vec3 ep = cross(s.e, s.p);
  for (std::size_t i = 0; i < 3; ++i) {
    a.r[i] = s.energy * s.p[i] + be[i];
    a.g[i] = s.energy * s.e[i] + pb[i];
    a.b[i] = s.energy * s.b[i] + ep[i];
  }
  return a;
}

double k2_short_form(const EmeqState& s) {
  const MassComponents m = mass_components(s);
  return norm2(aux_vectors(s).b) - m.mr * m.mr - m.mg * m.mg;
}

double k2_long_form(const EmeqState& s) {
  const double en = s.energy;
  const double ep = dot(s.e, s.p), eb = dot(s.e, s.b), pb = dot(s.p, s.b);
  return -2.0 * en * dot(s.p, cross(s.e, s.b)) + en * en * norm2(s.b) + norm2(s.e) * norm2(s.p) -
         ep * ep - eb * eb - pb * pb;
}

namespace {

Frequency frequency_from_radicand(double radicand, double zero_tol) {
  if (std::abs(radicand) <= zero_tol) return {0.0, FrequencyNature::Zero};
  if (radicand > 0.0) return {std::sqrt(radicand), FrequencyNature::Oscillating};
  return {std::sqrt(-radicand), FrequencyNature::Hyperbolic};
}

}  // namespace

SpectralInvariants spectral_invariants(const EmeqState& s) {
  SpectralInvariants inv;
  inv.k1 = s.energy * s.energy + norm2(s.b) - norm2(s.e) - norm2(s.p);
  inv.k2 = k2_short_form(s);
  inv.det = inv.k1 * inv.k1 - 4.0 * inv.k2;
  const double scale = std::max(1.0, inv.k1 * inv.k1);
  inv.degenerate = std::abs(inv.k2) < 1e-12 * scale;

  if (inv.k2 < 0.0 && !inv.degenerate) {
    inv.classification = Classification::ComplexQuadruple;
    // |lambda| of the quadruple; both pairs share it.
    const double rho = std::pow(inv.k1 * inv.k1 + 4.0 * std::abs(inv.k2), 0.25);
    inv.w1 = {rho, FrequencyNature::Complex};
    inv.w2 = {rho, FrequencyNature::Complex};
    return inv;
  }

  const double root = std::sqrt(std::max(inv.k2, 0.0));
  const double zero_tol = 1e-12 * std::max(1.0, std::abs(inv.k1));
  inv.w1 = frequency_from_radicand(inv.k1 + 2.0 * root, zero_tol);
  inv.w2 = frequency_from_radicand(inv.k1 - 2.0 * root, zero_tol);

  auto real_pair = [](const Frequency& w) { return w.nature == FrequencyNature::Hyperbolic; };
  if (real_pair(inv.w1) && real_pair(inv.w2))
    inv.classification = Classification::TwoRealPairs;
  else if (real_pair(inv.w1) || real_pair(inv.w2))
    inv.classification = Classification::MixedRealImaginary;
  else
    inv.classification = Classification::TwoImaginaryPairs;

  inv.stable = inv.k2 > 0.0 && inv.k1 > 2.0 * root;
  return inv;
}

std::array<double, 4> lax_invariants(const Matrix& s) {
  if (!s.square()) throw Error(ErrorCode::DimensionMismatch, "Lax invariants need a square matrix");
  std::array<double, 4> out{};
  Matrix power = s;
  out[0] = power.trace();
  for (std::size_t k = 1; k < 4; ++k) {
    power = power * s;
    out[k] = power.trace();
  }
  return out;
}

}  // namespace symdec
