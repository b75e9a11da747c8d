#include "symdec/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "symdec/dirac.hpp"
#include "symdec/error.hpp"
#include "symdec/kernels.hpp"

namespace symdec {

SymplecticTransform SymplecticTransform::identity(std::size_t dim) {
  return {Matrix::identity(dim), Matrix::identity(dim), {}};
}

std::size_t SymplecticTransform::applied_steps() const {
  return static_cast<std::size_t>(
      std::count_if(log.begin(), log.end(), [](const TransformStep& s) { return !s.skipped; }));
}

bool is_rotation_generator(int b) { return b == 0 || b == 7 || b == 8 || b == 9; }

std::pair<Matrix, Matrix> basic_matrices(int b, double eps) {
  if (b < 0 || b > 9)
    throw Error(ErrorCode::IndexOutOfRange, "generator must be a symplex, got " + std::to_string(b));
  double c, s;
  if (is_rotation_generator(b)) {
    c = std::cos(0.5 * eps);
    s = std::sin(0.5 * eps);
  } else {
    c = std::cosh(0.5 * eps);
    s = std::sinh(0.5 * eps);
  }
  const IntMatrix4& g = gamma_int(b);
  Matrix r(4, 4), r_inv(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double d = i == j ? c : 0.0;
      r(i, j) = d + s * g[i][j];
      r_inv(i, j) = d - s * g[i][j];
    }
  return {std::move(r), std::move(r_inv)};
}

SymplecticTransform basic_transform(int b, double eps) {
  auto [r, r_inv] = basic_matrices(b, eps);
  return {std::move(r), std::move(r_inv), {TransformStep{b, eps, 0, 1, false}}};
}

Matrix apply_similarity(const SymplecticTransform& t, const Matrix& f) {
  if (f.rows() != t.dim() || f.cols() != t.dim())
    throw Error(ErrorCode::DimensionMismatch, "transform and matrix dimensions differ");
  return t.r * f * t.r_inv;
}

SymplecticTransform compose(const SymplecticTransform& t2, const SymplecticTransform& t1) {
  if (t1.dim() != t2.dim()) throw Error(ErrorCode::DimensionMismatch, "compose");
  SymplecticTransform out{t2.r * t1.r, t1.r_inv * t2.r_inv, t1.log};
  out.log.insert(out.log.end(), t2.log.begin(), t2.log.end());
  return out;
}

SymplecticTransform inverse(const SymplecticTransform& t) {
  SymplecticTransform out{t.r_inv, t.r, {}};
  for (auto it = t.log.rbegin(); it != t.log.rend(); ++it) {
    TransformStep s = *it;
    s.angle = -s.angle;
    out.log.push_back(s);
  }
  return out;
}

namespace {

std::array<std::size_t, 4> embedding_indices(std::size_t i, std::size_t j, std::size_t n_pairs) {
  if (!(i < j && j < n_pairs))
    throw Error(ErrorCode::IndexOutOfRange,
                "embedding (" + std::to_string(i) + ", " + std::to_string(j) + ") in " +
                    std::to_string(n_pairs) + " pairs");
  return {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
}

void require_4x4(const Matrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "expected 4x4");
}

}  // namespace

SymplecticTransform embed_4x4(const SymplecticTransform& t, std::size_t i, std::size_t j,
                              std::size_t n_pairs) {
  require_4x4(t.r);
  const auto idx = embedding_indices(i, j, n_pairs);
  SymplecticTransform out = SymplecticTransform::identity(2 * n_pairs);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      out.r(idx[a], idx[b]) = t.r(a, b);
      out.r_inv(idx[a], idx[b]) = t.r_inv(a, b);
    }
  out.log = t.log;
  for (TransformStep& s : out.log) {
    s.block_i = i;
    s.block_j = j;
  }
  return out;
}

void apply_embedded(Matrix& f, const Matrix& r4, const Matrix& r4_inv, std::size_t i,
                    std::size_t j) {
  require_4x4(r4);
  require_4x4(r4_inv);
  const auto idx = embedding_indices(i, j, f.rows() / 2);
  const auto& k = kernels::active();
  k.mix_rows4(f.data(), f.cols(), idx.data(), r4.data());
  k.mix_cols4(f.data(), f.rows(), f.cols(), idx.data(), r4_inv.data());
}

void accumulate_embedded(SymplecticTransform& acc, const Matrix& r4, const Matrix& r4_inv,
                         std::size_t i, std::size_t j) {
  require_4x4(r4);
  require_4x4(r4_inv);
  const auto idx = embedding_indices(i, j, acc.dim() / 2);
  const auto& k = kernels::active();
  k.mix_rows4(acc.r.data(), acc.r.cols(), idx.data(), r4.data());
  k.mix_cols4(acc.r_inv.data(), acc.r_inv.rows(), acc.r_inv.cols(), idx.data(), r4_inv.data());
}

std::pair<Matrix, Matrix> pair_rotation(bool first_pair, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Matrix r = Matrix::identity(4), r_inv = Matrix::identity(4);
  const std::size_t o = first_pair ? 0 : 2;
  r(o, o) = c;
  r(o, o + 1) = s;
  r(o + 1, o) = -s;
  r(o + 1, o + 1) = c;
  r_inv(o, o) = c;
  r_inv(o, o + 1) = -s;
  r_inv(o + 1, o) = s;
  r_inv(o + 1, o + 1) = c;
  return {std::move(r), std::move(r_inv)};
}

std::pair<Matrix, Matrix> pair_scaling(bool first_pair, double s) {
  Matrix r = Matrix::identity(4), r_inv = Matrix::identity(4);
  const std::size_t o = first_pair ? 0 : 2;
  r(o, o) = std::exp(-s);
  r(o + 1, o + 1) = std::exp(s);
  r_inv(o, o) = std::exp(s);
  r_inv(o + 1, o + 1) = std::exp(-s);
  return {std::move(r), std::move(r_inv)};
}

SymplecticTransform replay(std::span<const TransformStep> log, std::size_t n_pairs) {
  SymplecticTransform acc = SymplecticTransform::identity(2 * n_pairs);
  for (const TransformStep& s : log) {
    acc.log.push_back(s);
    if (s.skipped) continue;
    const auto [r, r_inv] = basic_matrices(s.generator, s.angle);
    accumulate_embedded(acc, r, r_inv, s.block_i, s.block_j);
  }
  return acc;
}

double symplectic_defect(const SymplecticTransform& t) { return symplectic_residual(t.r); }

double inverse_defect(const SymplecticTransform& t) {
  return (t.r * t.r_inv - Matrix::identity(t.dim())).frobenius_norm();
}

TransferMatrix matrix_exponential(const Matrix& f, double s) {
  if (!f.square()) throw Error(ErrorCode::DimensionMismatch, "exponential of a non-square matrix");
  Matrix a = f * s;
  const double norm = a.max_abs() * static_cast<double>(a.rows());
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  a *= std::ldexp(1.0, -squarings);

  const std::size_t n = a.rows();
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * a;
    term *= 1.0 / k;
    sum += term;
    if (term.max_abs() <= 1e-18 * sum.max_abs()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;

  TransferMatrix out{std::move(sum), s, 0.0};
  if (n % 2 == 0 && n > 0) out.symplectic_residual = symplectic_residual(out.m);
  return out;
}

}  // namespace symdec
