#include "symdec/jacobi.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "symdec/dirac.hpp"

namespace symdec {

Matrix random_test_symplex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  const std::size_t dim = 2 * n;
  Matrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      const double x = uniform();
      a(i, j) = a(j, i) = i == j ? static_cast<double>(n) + x : x - 0.5;
    }
  return symplectic_unit(n) * a;
}

Matrix off_block_norms(const Matrix& f) {
  const std::size_t n = f.rows() / 2;
  Matrix o(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) o(i, j) = block_sum_squares(f, i, j) / 4.0;
  return o;
}

double off_block_norm_sum(const Matrix& f) {
  const std::size_t n = f.rows() / 2;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::sqrt(block_sum_squares(f, i, j));
  return s;
}

double reference_step_count(std::size_t n) {
  const double x = static_cast<double>(n);
  return 5.0 * x * (x - 2.0) / 2.0;
}

namespace {

Matrix extract_4x4(const Matrix& f, std::size_t i, std::size_t j) {
  const std::size_t idx[4] = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
  Matrix sub(4, 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) sub(a, b) = f(idx[a], idx[b]);
  return sub;
}

// The 4x4 embedding used for per-pair operations on pair k.
std::pair<std::size_t, std::size_t> partner_embedding(std::size_t k, std::size_t n) {
  return k + 1 < n ? std::pair{k, k + 1} : std::pair{k - 1, k};
}

double folded_half_angle(double num, double den) {
  if (num == 0.0 && den == 0.0) return 0.0;
  double a = std::atan2(num, den);
  if (a > std::numbers::pi / 2) a -= std::numbers::pi;
  else if (a <= -std::numbers::pi / 2) a += std::numbers::pi;
  return 0.5 * a;
}

void log_pair(JacobiResult& res, int g1, int g2, double angle, bool first, std::size_t i,
              std::size_t j) {
  res.transform.log.push_back({g1, angle, i, j, false});
  res.transform.log.push_back({g2, first ? angle : -angle, i, j, false});
}

}  // namespace

JacobiResult jacobi_decouple(const Matrix& f, const JacobiOptions& opt) {
  if (!f.square() || f.rows() % 2 != 0 || f.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "expected a 2n x 2n matrix");
  if (!is_symplex(f)) throw Error(ErrorCode::NotASymplex, "input fails the symplex predicate");

  const std::size_t n = f.rows() / 2;
  const std::size_t max_steps = opt.max_steps != 0 ? opt.max_steps : 40 * n * n;
  const double norm = std::max(f.frobenius_norm(), 1e-300);

  JacobiResult res{SymplecticTransform::identity(2 * n), f, {}, {}, {}, false};
  Matrix& F = res.final;
  res.stats.initial_residual = off_block_norm_sum(F) / norm;

  while (true) {
    const double off = off_block_norm_sum(F);
    if (off <= opt.tol * norm) break;
    if (res.stats.pivot_steps >= max_steps)
      throw Error(ErrorCode::MaxStepsExceeded,
                  std::to_string(max_steps) + " pivot steps, residual " + std::to_string(off / norm));

    std::size_t pi = 0, pj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = std::max(block_sum_squares(F, i, j), block_sum_squares(F, j, i)) / 4.0;
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    res.stats.history.push_back({pi, pj, off});

    DecoupleResult step;
    try {
      step = decouple_block_diagonal(extract_4x4(F, pi, pj), opt.pivot);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ComplexEigenvalues)
        throw Error(ErrorCode::PivotComplex,
                    "pivot (" + std::to_string(pi) + ", " + std::to_string(pj) + "): " + e.what())
            .with_pivot(pi, pj);
      throw;
    }
    apply_embedded(F, step.transform.r, step.transform.r_inv, pi, pj);
    accumulate_embedded(res.transform, step.transform.r, step.transform.r_inv, pi, pj);
    for (TransformStep s : step.transform.log) {
      s.block_i = pi;
      s.block_j = pj;
      res.transform.log.push_back(s);
    }
    ++res.stats.pivot_steps;
  }
  res.stats.final_residual = off_block_norm_sum(F) / norm;

  if (opt.target == JacobiTarget::BlockDiagonal || n < 2) return res;

  // Per-pair rotation: block [[a, b], [c, -a]] = J S with S = [[-c, a], [a, b]];
  // the rotation diagonalizes S.
  for (std::size_t k = 0; k < n; ++k) {
    const double a = F(2 * k, 2 * k), b = F(2 * k, 2 * k + 1), c = F(2 * k + 1, 2 * k);
    const double phi = folded_half_angle(2.0 * a, -c - b);
    if (std::abs(phi) < opt.pivot.step_tol) continue;
    const auto [i, j] = partner_embedding(k, n);
    const bool first = i == k;
    const auto [r, r_inv] = pair_rotation(first, phi);
    apply_embedded(F, r, r_inv, i, j);
    accumulate_embedded(res.transform, r, r_inv, i, j);
    log_pair(res, 0, 8, phi, first, i, j);
    ++res.stats.hamiltonian_steps;
  }
  const double zero = opt.pivot.post_tol * std::max(1.0, norm);
  double ham = 0.0;
  for (std::size_t k = 0; k < 2 * n; ++k) ham = std::max(ham, std::abs(F(k, k)));
  if (ham > zero)
    res.issues.push_back({ErrorCode::PrecisionLoss, "diagonal residual " + std::to_string(ham)});

  if (opt.target != JacobiTarget::NormalForm) return res;

  res.pair_omega.assign(n, 0.0);
  res.normal = true;
  for (std::size_t k = 0; k < n; ++k) {
    const double alpha = F(2 * k, 2 * k + 1);
    const double beta = -F(2 * k + 1, 2 * k);
    if (std::abs(alpha) <= zero || std::abs(beta) <= zero || alpha * beta < 0.0) {
      res.normal = false;
      res.issues.push_back({ErrorCode::UnstableBlock,
                            "pair " + std::to_string(k) + " has no rotation normal form"});
      continue;
    }
    res.pair_omega[k] = (alpha < 0.0 ? -1.0 : 1.0) * std::sqrt(alpha * beta);
    const double s = 0.25 * std::log(alpha / beta);
    if (std::abs(s) < opt.pivot.step_tol) continue;
    const auto [i, j] = partner_embedding(k, n);
    const bool first = i == k;
    const auto [r, r_inv] = pair_scaling(first, s);
    apply_embedded(F, r, r_inv, i, j);
    accumulate_embedded(res.transform, r, r_inv, i, j);
    log_pair(res, 3, 4, s, first, i, j);
    ++res.stats.scaling_steps;
  }
  return res;
}

}  // namespace symdec
