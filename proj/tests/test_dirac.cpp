#include <random>

#include "doctest.h"
#include "support.hpp"
#include "symdec/dirac.hpp"
#include "symdec/error.hpp"

using namespace symdec;

TEST_CASE("basis identities hold in integer arithmetic") {
  CHECK(verify_basis_identities() == 0);
  // a few identities spelled out
  const auto p = [](int a, int b) { return int_product(gamma_int(a), gamma_int(b)); };
  CHECK(p(0, 1) == gamma_int(4));
  CHECK(p(0, 2) == gamma_int(5));
  CHECK(p(0, 3) == gamma_int(6));
  CHECK(int_product(p(0, 1), p(2, 3)) == gamma_int(14));
  CHECK(p(14, 0) == gamma_int(10));
  CHECK(p(14, 3) == gamma_int(13));
}

TEST_CASE("distinct basis elements anticommute or commute, squares are +-1") {
  for (int a = 0; a < 15; ++a) {
    const Matrix ga = gamma(a);
    CHECK(ga * ga == static_cast<double>(gamma_square_sign(a)) * Matrix::identity(4));
  }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) CHECK((gamma(a) * gamma(b) + gamma(b) * gamma(a)) == Matrix::zeros(4, 4));
  // any two basis elements either commute or anticommute
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b) {
      const Matrix ab = gamma(a) * gamma(b), ba = gamma(b) * gamma(a);
      CHECK((ab + ba == Matrix::zeros(4, 4) || ab - ba == Matrix::zeros(4, 4)));
    }
}

TEST_CASE("gamma 12, 3, 4, 8 have the documented shapes") {
  CHECK(gamma(12) == Matrix{{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(gamma(3) == Matrix{{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}});
  CHECK(gamma(4) == Matrix{{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}});
  CHECK(gamma(15) == Matrix::identity(4));
  CHECK(gamma(0) == symplectic_unit(2));
}

TEST_CASE("symplex and cosymplex predicates") {
  for (int k = 0; k < 16; ++k) {
    CAPTURE(k);
    CHECK(is_symplex(gamma(k)) == (k < 10));
    CHECK(is_cosymplex(gamma(k)) == (k >= 10));
    CHECK(GammaIndex(k).is_symplex() == (k < 10));
  }
  CHECK_THROWS_AS(gamma(16), Error);
  CHECK_THROWS_AS(GammaIndex::checked(-1), Error);
  CHECK(GammaIndex::checked(15).value() == 15);
}

TEST_CASE("coefficient roundtrip") {
  std::mt19937_64 g(2);
  for (int i = 0; i < 200; ++i) {
    const Matrix m = testing::random_matrix(g, 4, 4, -3, 3);
    CHECK(max_abs_diff(from_coefficients(rdm_coefficients(m)), m) < 1e-13);
  }
  for (int k = 0; k < 16; ++k) {
    const auto c = rdm_coefficients(gamma(k));
    for (int l = 0; l < 16; ++l) CHECK(c[static_cast<std::size_t>(l)] == (k == l ? 1.0 : 0.0));
  }
}

TEST_CASE("symplex/cosymplex split in any even dimension") {
  std::mt19937_64 g(4);
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    const Matrix m = testing::random_matrix(g, 2 * n, 2 * n);
    const auto [s, c] = symplex_cosymplex_split(m);
    CHECK(is_symplex(s));
    CHECK(is_cosymplex(c));
    CHECK(max_abs_diff(s + c, m) < 1e-15);
    CHECK(symplex_residual(s) < 1e-14);
    CHECK(cosymplex_residual(c) < 1e-14);
  }
  // in 4x4 the split is the coefficient split
  const Matrix m = testing::random_matrix(g, 4, 4);
  const auto cm = rdm_coefficients(m);
  const auto cs = rdm_coefficients(symplex_cosymplex_split(m).first);
  for (std::size_t k = 0; k < 16; ++k) CHECK(cs[k] == doctest::Approx(k < 10 ? cm[k] : 0.0));
}
