#include "symdec/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "symdec/error.hpp"
#include "symdec/kernels.hpp"

namespace symdec {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  values_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
    values_.insert(values_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius_norm() const {
  return std::sqrt(kernels::active().sum_squares(values_.data(), values_.size()));
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix c(a.rows_, b.cols_);
  kernels::active().gemm(a.rows_, a.cols_, b.cols_, a.data(), b.data(), c.data());
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

Matrix symplectic_unit(std::size_t n_pairs) {
  Matrix j(2 * n_pairs, 2 * n_pairs);
  for (std::size_t k = 0; k < n_pairs; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

double symplectic_residual(const Matrix& m) {
  if (!m.square() || m.rows() % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "symplectic check needs an even square matrix");
  const Matrix j = symplectic_unit(m.rows() / 2);
  return (m * j * m.transpose() - j).frobenius_norm();
}

double block_sum_squares(const Matrix& m, std::size_t bi, std::size_t bj) {
  const double a = m(2 * bi, 2 * bj), b = m(2 * bi, 2 * bj + 1);
  const double c = m(2 * bi + 1, 2 * bj), d = m(2 * bi + 1, 2 * bj + 1);
  return a * a + b * b + c * c + d * d;
}

double off_block_frobenius(const Matrix& m) {
  const std::size_t n = m.rows() / 2;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += block_sum_squares(m, i, j);
  return std::sqrt(s);
}

double off_block_max_abs(const Matrix& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i / 2 != j / 2) r = std::max(r, std::abs(m(i, j)));
  return r;
}

}  // namespace symdec
