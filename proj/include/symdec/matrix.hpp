#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace symdec {

/// Dense row-major real matrix with value semantics.
///
/// Sizes in this library are small (4x4 up to a few dozen rows), so every
/// operation returns a fresh value. Products go through the kernel table in
/// kernels.hpp.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }

  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  Matrix transpose() const;
  double trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Largest absolute entrywise difference; dimensions must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Block-diagonal symplectic unit J = diag([[0,1],[-1,0]], ...) for n pairs,
/// fixing the ordering (q1, p1, q2, p2, ...).
Matrix symplectic_unit(std::size_t n_pairs);

/// ||M J M^T - J||_F for a 2n x 2n matrix.
double symplectic_residual(const Matrix& m);

/// Sum of squared entries in the 2x2 block (bi, bj).
double block_sum_squares(const Matrix& m, std::size_t bi, std::size_t bj);

/// Frobenius norm of everything outside the 2x2 diagonal blocks.
double off_block_frobenius(const Matrix& m);

/// Largest absolute entry outside the 2x2 diagonal blocks.
double off_block_max_abs(const Matrix& m);

}  // namespace symdec
