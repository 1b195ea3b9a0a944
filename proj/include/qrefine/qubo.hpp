#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qrefine/double_double.hpp"
#include "qrefine/dyadic.hpp"
#include "qrefine/encoding.hpp"
#include "qrefine/linalg.hpp"

namespace qrefine {

using QubitPair = std::pair<std::size_t, std::size_t>;

/// Upper-triangular quadratic form sum_i Q_ii q_i + sum_{i<j} Q_ij q_i q_j.
class QuboMatrix {
 public:
  QuboMatrix() = default;
  /// Throws kIndexOutOfRange for pairs that are not i < j < n, and
  /// kInvalidArgument for non-finite coefficients.
  QuboMatrix(std::vector<double> linear, std::map<QubitPair, double> quadratic);

  std::size_t n_qubits() const { return linear_.size(); }
  const std::vector<double>& linear() const { return linear_; }
  const std::map<QubitPair, double>& quadratic() const { return quadratic_; }
  double max_abs_coefficient() const;

  friend bool operator==(const QuboMatrix&, const QuboMatrix&) = default;

 private:
  std::vector<double> linear_;
  std::map<QubitPair, double> quadratic_;
};

/// Throws kLengthMismatch when the bit count differs from n_qubits.
double energy(const QuboMatrix& q, const BitVector& bits);

struct IsingModel {
  std::vector<double> h;
  std::map<QubitPair, double> j;
  double offset = 0.0;
};

/// Substitutes q = (s + 1) / 2; energy(Q, q) == ising_energy(model, s) + offset.
IsingModel qubo_to_ising(const QuboMatrix& q);
double ising_energy(const IsingModel& model, const std::vector<int>& spins);

/// Builds window QUBOs for one system. Caches the effective matrix A*V and
/// its Gram matrix, so repeated builds only redo the O(n^2) shifted terms.
class WindowBuilder {
 public:
  explicit WindowBuilder(const LinearSystem& system);
  /// Increments are expressed in the columns of `basis`: x = c + basis * y.
  WindowBuilder(const LinearSystem& system, const Matrix& basis);

  /// energy(Q, q) = ||A(c + V y(q)) - b||^2 - ||b - A c||^2, with the
  /// constant term left out.
  QuboMatrix build(const DyadicVector& center, const EncodingSpec& spec) const;

 private:
  LinearSystem system_;
  Matrix effective_;  // A or A * V
  Matrix gram_;       // effective^T effective
};

QuboMatrix build_window(const LinearSystem& system, const DyadicVector& center, const EncodingSpec& spec);

/// -||b - A c||^2: the lowest energy any window around c could reach.
DoubleDouble target_min_energy(const LinearSystem& system, const DyadicVector& center);

}  // namespace qrefine
