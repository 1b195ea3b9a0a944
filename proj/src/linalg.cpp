#include "qrefine/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qrefine/error.hpp"

namespace qrefine {
namespace {

constexpr double kPivotFloor = 1e-300;

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " has a non-finite entry");
  }
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kTooManyQubits: return "TooManyQubits";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : Matrix(rows, cols, std::vector<double>(rows * cols, 0.0)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::kDimensionMismatch, "matrix must be at least 1x1");
  if (data_.size() != rows_ * cols_) throw Error(ErrorCode::kDimensionMismatch, "entry count does not match shape");
  require_finite(data_, "matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows.size() ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::kDimensionMismatch, "ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  *this = Matrix(rows_, cols_, std::move(data_));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::frobenius_norm() const { return norm2(data_); }

double norm2(std::span<const double> v) {
  DoubleDouble acc;
  for (double x : v) acc += DoubleDouble::product(x, x);
  return sqrt(acc).to_double();
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kDimensionMismatch, "inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      DoubleDouble acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += DoubleDouble::product(a(i, k), b(k, j));
      out(i, j) = acc.to_double();
    }
  return out;
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "vector length differs from column count");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    DoubleDouble acc;
    for (std::size_t k = 0; k < a.cols(); ++k) acc += DoubleDouble::product(a(i, k), x[k]);
    out[i] = acc.to_double();
  }
  return out;
}

LinearSystem::LinearSystem(Matrix a_in, Vector b_in) : a(std::move(a_in)), b(std::move(b_in)) {
  if (!a.square()) throw Error(ErrorCode::kDimensionMismatch, "coefficient matrix is not square");
  if (a.rows() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "right-hand side length differs from matrix size");
  require_finite(b, "right-hand side");
}

Vector solve_direct(const LinearSystem& system) {
  const std::size_t n = system.size();
  Matrix m = system.a;
  Vector rhs = system.b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (std::abs(m(pivot, col)) <= kPivotFloor) {
      throw Error(ErrorCode::kSingularMatrix, "pivot underflow in column " + std::to_string(col));
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(col, c), m(pivot, c));
      std::swap(rhs[col], rhs[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
      rhs[r] -= f * rhs[col];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    DoubleDouble acc(rhs[i]);
    for (std::size_t c = i + 1; c < n; ++c) acc -= DoubleDouble::product(m(i, c), x[c]);
    x[i] = acc.to_double() / m(i, i);
  }
  return x;
}

DyadicVector residual_exact(const LinearSystem& system, const DyadicVector& x) {
  const std::size_t n = system.size();
  if (x.size() != n) throw Error(ErrorCode::kDimensionMismatch, "point length differs from system size");
  std::vector<Dyadic> out;
  out.reserve(n);
  std::vector<Dyadic> xs;
  xs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) xs.push_back(x.component(i));
  for (std::size_t r = 0; r < n; ++r) {
    Dyadic acc = Dyadic::from_double(system.b[r]);
    for (std::size_t c = 0; c < n; ++c) {
      if (xs[c].is_zero()) continue;
      acc = acc - Dyadic::from_double(system.a(r, c)) * xs[c];
    }
    out.push_back(std::move(acc));
  }
  return DyadicVector::from_components(out);
}

DoubleDouble residual_norm_sq(const LinearSystem& system, const DyadicVector& x) {
  const DyadicVector r = residual_exact(system, x);
  DoubleDouble acc;
  for (const DoubleDouble& v : r.to_double_doubles()) acc += v * v;
  return acc;
}

Matrix gram(const Matrix& a) { return multiply(a.transposed(), a); }

EigenBasis symmetric_eigen(const Matrix& s) {
  if (!s.square()) throw Error(ErrorCode::kNotSymmetric, "matrix is not square");
  const std::size_t n = s.rows();
  const double scale = std::max(s.frobenius_norm(), 1e-300);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > 1e-12 * scale) {
        throw Error(ErrorCode::kNotSymmetric, "entries (" + std::to_string(i) + "," + std::to_string(j) + ") differ");
      }

  Matrix a = s;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(off) <= 1e-15 * scale) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation annihilating a(p, q) (Golub & Van Loan, sym.schur2).
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, tau) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  EigenBasis out{Vector(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.values[j] = a(src, src);
    std::size_t lead = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(v(k, src)) > std::abs(v(lead, src))) lead = k;
    const double sign = v(lead, src) < 0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = sign * v(k, src);
  }
  return out;
}

double condition_number(const Matrix& a) {
  if (!a.square()) throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
  const EigenBasis basis = symmetric_eigen(gram(a));
  const double hi = basis.values.front();
  const double lo = basis.values.back();
  // Below n * eps * lambda_max the computed eigenvalue is rounding noise.
  if (lo <= static_cast<double>(a.rows()) * 2.220446049250313e-16 * hi) {
    throw Error(ErrorCode::kSingularMatrix, "smallest eigenvalue of A^T A is not positive");
  }
  return std::sqrt(hi / lo);
}

}  // namespace qrefine
