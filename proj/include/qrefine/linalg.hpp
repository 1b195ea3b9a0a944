#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qrefine/double_double.hpp"
#include "qrefine/dyadic.hpp"

namespace qrefine {

/// Dense row-major matrix of finite doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> entries() const { return data_; }

  Matrix transposed() const;
  double frobenius_norm() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

using Vector = std::vector<double>;

double norm2(std::span<const double> v);

/// Product with double-double accumulation, rounded once per entry.
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> x);

/// Square system A x = b.
struct LinearSystem {
  Matrix a;
  Vector b;

  LinearSystem() = default;
  /// Validates squareness, matching lengths and finiteness.
  LinearSystem(Matrix a, Vector b);

  std::size_t size() const { return b.size(); }
};

struct EigenBasis {
  Vector values;   // descending
  Matrix vectors;  // column i pairs with values[i]
};

/// Gaussian elimination with partial pivoting. Throws kSingularMatrix when a
/// pivot magnitude falls to 1e-300 or below.
Vector solve_direct(const LinearSystem& system);

/// b - A x, exact: every double is a dyadic rational.
DyadicVector residual_exact(const LinearSystem& system, const DyadicVector& x);

/// ||A x - b||^2 from the exact residual, squared and summed in double-double.
DoubleDouble residual_norm_sq(const LinearSystem& system, const DyadicVector& x);

/// Cyclic Jacobi rotations. Eigenvalues sorted descending; each eigenvector's
/// largest-magnitude entry is made positive.
EigenBasis symmetric_eigen(const Matrix& s);

/// A^T A, accumulated in double-double.
Matrix gram(const Matrix& a);

/// 2-norm condition number sqrt(lambda_max / lambda_min) of A^T A.
double condition_number(const Matrix& a);

}  // namespace qrefine
