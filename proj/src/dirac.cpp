#include "symdec/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symdec/error.hpp"

namespace symdec {

namespace {

constexpr IntMatrix4 mul(const IntMatrix4& a, const IntMatrix4& b) {
  IntMatrix4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int s = 0;
      for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      c[i][j] = static_cast<std::int8_t>(s);
    }
  return c;
}

constexpr IntMatrix4 neg(const IntMatrix4& a) {
  IntMatrix4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = static_cast<std::int8_t>(-a[i][j]);
  return c;
}

constexpr IntMatrix4 kG0{{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}};
constexpr IntMatrix4 kG1{{{0, -1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}};
constexpr IntMatrix4 kG2{{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}};
constexpr IntMatrix4 kG3{{{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}}};
constexpr IntMatrix4 kUnit{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};

// Literal tables; verify_basis_identities() re-derives them from the products.
constexpr std::array<IntMatrix4, 16> kGamma{{
    kG0,
    kG1,
    kG2,
    kG3,
    {{{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}},   // g0 g1
    {{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}}},   // g0 g2
    {{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}},     // g0 g3
    {{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}}},   // g2 g3
    {{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}},   // g3 g1
    {{{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}},   // g1 g2
    {{{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}}},   // g1 g2 g3
    {{{0, 0, -1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}}, // g0 g2 g3
    {{{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},   // g0 g3 g1
    {{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}}},   // g0 g1 g2
    {{{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}},   // g0 g1 g2 g3
    kUnit,
}};

}  // namespace

GammaIndex GammaIndex::checked(int k) {
  if (k < 0 || k > 15)
    throw Error(ErrorCode::IndexOutOfRange, "gamma index " + std::to_string(k));
  return GammaIndex(k);
}

const IntMatrix4& gamma_int(int k) {
  return kGamma[static_cast<std::size_t>(GammaIndex::checked(k).value())];
}

Matrix gamma(int k) {
  const IntMatrix4& g = gamma_int(k);
  Matrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = g[i][j];
  return m;
}

int gamma_square_sign(int k) {
  const IntMatrix4 sq = mul(gamma_int(k), gamma_int(k));
  return sq[0][0];
}

IntMatrix4 int_product(const IntMatrix4& a, const IntMatrix4& b) { return mul(a, b); }

int verify_basis_identities() {
  const auto& g = kGamma;
  int failures = 0;
  auto expect = [&](const IntMatrix4& lhs, const IntMatrix4& rhs) {
    if (lhs != rhs) ++failures;
  };
  const IntMatrix4 g14 = mul(mul(mul(g[0], g[1]), g[2]), g[3]);
  expect(g[14], g14);
  expect(g[15], kUnit);
  expect(g[4], mul(g[0], g[1]));
  expect(g[5], mul(g[0], g[2]));
  expect(g[6], mul(g[0], g[3]));
  expect(g[7], mul(mul(g14, g[0]), g[1]));
  expect(g[7], mul(g[2], g[3]));
  expect(g[8], mul(mul(g14, g[0]), g[2]));
  expect(g[8], mul(g[3], g[1]));
  expect(g[9], mul(mul(g14, g[0]), g[3]));
  expect(g[9], mul(g[1], g[2]));
  expect(g[10], mul(g14, g[0]));
  expect(g[10], mul(mul(g[1], g[2]), g[3]));
  expect(g[11], mul(g14, g[1]));
  expect(g[11], mul(mul(g[0], g[2]), g[3]));
  expect(g[12], mul(g14, g[2]));
  expect(g[12], mul(mul(g[0], g[3]), g[1]));
  expect(g[13], mul(g14, g[3]));
  expect(g[13], mul(mul(g[0], g[1]), g[2]));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      IntMatrix4 anti = mul(g[i], g[j]);
      const IntMatrix4 ji = mul(g[j], g[i]);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) anti[r][c] = static_cast<std::int8_t>(anti[r][c] + ji[r][c]);
      expect(anti, IntMatrix4{});
    }
  // Every element squares to +-1.
  for (int k = 0; k < 16; ++k) {
    const IntMatrix4 sq = mul(g[k], g[k]);
    if (sq != kUnit && sq != neg(kUnit)) ++failures;
  }
  return failures;
}

RdmCoefficients rdm_coefficients(const Matrix& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw Error(ErrorCode::DimensionMismatch, "RDM expansion needs a 4x4 matrix");
  RdmCoefficients c{};
  for (int k = 0; k < 16; ++k) {
    const IntMatrix4& g = kGamma[static_cast<std::size_t>(k)];
    // Tr(M g + g M) = 2 sum_ij M_ij g_ji
    double tr = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) tr += m(i, j) * g[j][i];
    c[static_cast<std::size_t>(k)] = gamma_square_sign(k) * 4.0 * (2.0 * tr) / 32.0;
  }
  return c;
}

Matrix from_coefficients(const RdmCoefficients& c) {
  Matrix m(4, 4);
  for (int k = 0; k < 16; ++k) {
    const IntMatrix4& g = kGamma[static_cast<std::size_t>(k)];
    const double ck = c[static_cast<std::size_t>(k)];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) += ck * g[i][j];
  }
  return m;
}

namespace {

Matrix j_conjugate(const Matrix& m) {
  // J M J
  const Matrix j = symplectic_unit(m.rows() / 2);
  return j * m * j;
}

void require_even_square(const Matrix& m) {
  if (!m.square() || m.rows() % 2 != 0 || m.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "expected an even square matrix");
}

}  // namespace

double symplex_residual(const Matrix& m) {
  require_even_square(m);
  return (m.transpose() - j_conjugate(m)).frobenius_norm();
}

double cosymplex_residual(const Matrix& m) {
  require_even_square(m);
  return (m.transpose() + j_conjugate(m)).frobenius_norm();
}

bool is_symplex(const Matrix& m, double tol) {
  return symplex_residual(m) <= tol * std::max(1.0, m.frobenius_norm());
}

bool is_cosymplex(const Matrix& m, double tol) {
  return cosymplex_residual(m) <= tol * std::max(1.0, m.frobenius_norm());
}

std::pair<Matrix, Matrix> symplex_cosymplex_split(const Matrix& m) {
  require_even_square(m);
  const Matrix jmtj = j_conjugate(m.transpose());
  return {(m + jmtj) * 0.5, (m - jmtj) * 0.5};
}

}  // namespace symdec
