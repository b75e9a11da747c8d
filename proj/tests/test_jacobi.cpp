#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "symdec/error.hpp"
#include "symdec/jacobi.hpp"

using namespace symdec;

TEST_CASE("random test symplex construction") {
  for (std::size_t n : {2u, 3u, 6u}) {
    const Matrix f = random_test_symplex(n, 42);
    // A = -J F is the generated symmetric matrix
    const Matrix a = -1.0 * (symplectic_unit(n) * f);
    CHECK(max_abs_diff(a, a.transpose()) == 0.0);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      CHECK(a(i, i) >= static_cast<double>(n));
      CHECK(a(i, i) < static_cast<double>(n) + 1.0);
      for (std::size_t j = 0; j < 2 * n; ++j)
        if (i != j) CHECK(std::abs(a(i, j)) <= 0.5);
    }
    CHECK(is_symplex(f));
    CHECK(random_test_symplex(n, 42) == f);
    CHECK_FALSE(random_test_symplex(n, 43) == f);
  }
  // frozen first draw of mt19937_64(1): guards the documented generator
  const Matrix f = random_test_symplex(2, 1);
  std::mt19937_64 g(1);
  const double x0 = static_cast<double>(g() >> 11) * 0x1.0p-53;
  CHECK(-(symplectic_unit(2) * f)(0, 0) == 2.0 + x0);
}

TEST_CASE("block diagonalization preserves the spectrum") {
  for (std::size_t n : {2u, 3u, 4u, 6u, 9u}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      CAPTURE(n);
      CAPTURE(seed);
      const Matrix f = random_test_symplex(n, seed);
      const JacobiResult r = jacobi_decouple(f);
      CHECK(off_block_norm_sum(r.final) <= 1e-12 * f.frobenius_norm() * 1.0000001);
      CHECK(symplectic_defect(r.transform) < 1e-9);
      CHECK(max_abs_diff(apply_similarity(r.transform, f), r.final) < 1e-9);
      CHECK(testing::spectrum_distance(testing::eigenvalues(r.final), testing::eigenvalues(f)) < 1e-9);
      CHECK(r.stats.pivot_steps == r.stats.history.size());
      CHECK(r.stats.final_residual <= 1e-12);
      if (n == 2) {
        CHECK(r.stats.pivot_steps == 1);
      }
      CHECK(max_abs_diff(replay(r.transform.log, n).r, r.transform.r) < 1e-10);
    }
  }
}

TEST_CASE("Hamiltonian and normal targets") {
  for (std::size_t n : {3u, 5u}) {
    const Matrix f = random_test_symplex(n, 7);
    JacobiOptions ho;
    ho.target = JacobiTarget::HamiltonianForm;
    const JacobiResult h = jacobi_decouple(f, ho);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(h.final(2 * k, 2 * k)) < 1e-10);
      CHECK(std::abs(h.final(2 * k + 1, 2 * k + 1)) < 1e-10);
    }
    CHECK(h.stats.hamiltonian_steps > 0);

    JacobiOptions no;
    no.target = JacobiTarget::NormalForm;
    const JacobiResult r = jacobi_decouple(f, no);
    CHECK(r.normal);
    REQUIRE(r.pair_omega.size() == n);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(r.final(2 * k, 2 * k + 1) + r.final(2 * k + 1, 2 * k)) < 1e-10);
      CHECK(std::abs(r.final(2 * k, 2 * k + 1) - r.pair_omega[k]) < 1e-10);
    }
    // the pair frequencies are the oracle's eigenvalue moduli
    testing::cvec want, got;
    for (double w : r.pair_omega) {
      got.emplace_back(0.0, w);
      got.emplace_back(0.0, -w);
    }
    want = testing::eigenvalues(f);
    CHECK(testing::spectrum_distance(got, want) < 1e-9);
    CHECK(symplectic_defect(r.transform) < 1e-9);
  }
}

TEST_CASE("complex pivots and step limits are reported") {
  EmeqState s;
  s.e = {0.6, 0, 0};
  s.b = {0.8, 0, 0};
  const Matrix c4 = to_matrix(s);
  Matrix f = Matrix::zeros(6, 6);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) f(i, j) = c4(i, j);
  f(4, 5) = 1.0;
  f(5, 4) = -1.0;
  try {
    jacobi_decouple(f);
    FAIL("expected PivotComplex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PivotComplex);
    CHECK(e.pivot_i() == 0);
    CHECK(e.pivot_j() == 1);
  }

  JacobiOptions one;
  one.max_steps = 1;
  try {
    jacobi_decouple(random_test_symplex(5, 1), one);
    FAIL("expected MaxStepsExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MaxStepsExceeded);
  }
  CHECK_THROWS_AS(jacobi_decouple(Matrix::identity(4)), Error);
}

TEST_CASE("off-block norms and the reference count") {
  Matrix f = Matrix::zeros(6, 6);
  f(0, 2) = 2.0;
  f(1, 3) = 2.0;
  f(4, 0) = 1.0;
  const Matrix o = off_block_norms(f);
  CHECK(o(0, 1) == 2.0);
  CHECK(o(2, 0) == 0.25);
  CHECK(o(0, 0) == 0.0);
  CHECK(off_block_norm_sum(f) == doctest::Approx(std::sqrt(8.0) + 1.0));
  CHECK(reference_step_count(6) == 60.0);
  CHECK(reference_step_count(12) == 300.0);
  CHECK(reference_step_count(2) == 0.0);
}

TEST_CASE("step counts are deterministic per seed") {
  const auto a = jacobi_decouple(random_test_symplex(6, 5)).stats.pivot_steps;
  const auto b = jacobi_decouple(random_test_symplex(6, 5)).stats.pivot_steps;
  CHECK(a == b);
}
