#pragma once

// Shared helpers for the test executables. Eigen is the independent oracle
// for eigenvalues and matrix exponentials.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "symdec/decouple4.hpp"
#include "symdec/dirac.hpp"
#include "symdec/emeq.hpp"
#include "symdec/matrix.hpp"

namespace testing {

using symdec::Matrix;
using cvec = std::vector<std::complex<double>>;

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

inline cvec eigenvalues(const Matrix& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(m), false);
  cvec out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

/// Largest distance after greedily pairing each value of a with the nearest
/// unused value of b.
inline double spectrum_distance(cvec a, cvec b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](const auto& p, const auto& q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

inline Matrix expm_oracle(const Matrix& f, double t) {
  const Eigen::MatrixXd e = (to_eigen(f) * t).exp();
  return from_eigen(e);
}

inline Matrix random_matrix(std::mt19937_64& g, std::size_t r, std::size_t c, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = u(g);
  return m;
}

inline symdec::EmeqState random_state(std::mt19937_64& g, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  symdec::EmeqState s;
  s.energy = u(g);
  for (int k = 0; k < 3; ++k) {
    s.p[k] = u(g);
    s.e[k] = u(g);
    s.b[k] = u(g);
  }
  return s;
}

/// Any symplex: J times a random symmetric matrix.
inline Matrix random_symplex(std::mt19937_64& g, std::size_t n_pairs) {
  Matrix a = random_matrix(g, 2 * n_pairs, 2 * n_pairs);
  return symdec::symplectic_unit(n_pairs) * (0.5 * (a + a.transpose()));
}

enum class ComplexRegion { LowEnergy, Intermediate };

/// Random 4x4 symplex with K2 < 0 inside the precondition of one branch.
inline symdec::EmeqState random_complex_state(std::mt19937_64& g, ComplexRegion region) {
  for (;;) {
    const symdec::EmeqState s = random_state(g);
    const auto inv = symdec::spectral_invariants(s);
    if (inv.k2 >= -1e-6) continue;
    const double e2 = s.energy * s.energy;
    const double p2 = symdec::norm2(s.p), el2 = symdec::norm2(s.e);
    if (region == ComplexRegion::LowEnergy ? e2 < std::max(p2, el2) : e2 > std::min(p2, el2))
      return s;
  }
}

inline double max_abs(const std::array<double, 16>& c, std::initializer_list<int> skip) {
  double m = 0.0;
  for (int k = 0; k < 16; ++k)
    if (std::find(skip.begin(), skip.end(), k) == skip.end()) m = std::max(m, std::abs(c[static_cast<std::size_t>(k)]));
  return m;
}

}  // namespace testing
