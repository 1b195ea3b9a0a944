#include "qrefine/qubo.hpp"

#include <cmath>
#include <string>

#include "qrefine/error.hpp"

namespace qrefine {
namespace {

constexpr double kPruneBelow = 1e-300;

}  // namespace

QuboMatrix::QuboMatrix(std::vector<double> linear, std::map<QubitPair, double> quadratic)
    : linear_(std::move(linear)), quadratic_(std::move(quadratic)) {
  for (double v : linear_)
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite linear coefficient");
  for (const auto& [pair, v] : quadratic_) {
    if (pair.first >= pair.second || pair.second >= linear_.size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "quadratic pair (" + std::to_string(pair.first) + "," + std::to_string(pair.second) + ")");
    }
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite quadratic coefficient");
  }
}

double QuboMatrix::max_abs_coefficient() const {
  double m = 0.0;
  for (double v : linear_) m = std::max(m, std::abs(v));
  for (const auto& [pair, v] : quadratic_) m = std::max(m, std::abs(v));
  return m;
}

double energy(const QuboMatrix& q, const BitVector& bits) {
  if (bits.size() != q.n_qubits()) {
    throw Error(ErrorCode::kLengthMismatch, "expected " + std::to_string(q.n_qubits()) + " bits, got " +
                                                std::to_string(bits.size()));
  }
  DoubleDouble acc;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) acc += q.linear()[i];
  for (const auto& [pair, v] : q.quadratic())
    if (bits[pair.first] && bits[pair.second]) acc += v;
  return acc.to_double();
}

IsingModel qubo_to_ising(const QuboMatrix& q) {
  const std::size_t n = q.n_qubits();
  std::vector<DoubleDouble> h(n);
  DoubleDouble offset;
  IsingModel model;
  for (std::size_t i = 0; i < n; ++i) {
    h[i] += q.linear()[i] * 0.5;
    offset += q.linear()[i] * 0.5;
  }
  for (const auto& [pair, v] : q.quadratic()) {
    const double quarter = v * 0.25;
    model.j[pair] = quarter;
    h[pair.first] += quarter;
    h[pair.second] += quarter;
    offset += quarter;
  }
  model.h.reserve(n);
  for (const auto& v : h) model.h.push_back(v.to_double());
  model.offset = offset.to_double();
  return model;
}

double ising_energy(const IsingModel& model, const std::vector<int>& spins) {
  if (spins.size() != model.h.size()) throw Error(ErrorCode::kLengthMismatch, "spin count differs from model size");
  DoubleDouble acc;
  for (std::size_t i = 0; i < spins.size(); ++i) acc += model.h[i] * spins[i];
  for (const auto& [pair, v] : model.j) acc += v * (spins[pair.first] * spins[pair.second]);
  return acc.to_double();
}

WindowBuilder::WindowBuilder(const LinearSystem& system)
    : system_(system), effective_(system.a), gram_(gram(system.a)) {}

WindowBuilder::WindowBuilder(const LinearSystem& system, const Matrix& basis)
    : system_(system), effective_(multiply(system.a, basis)), gram_(gram(effective_)) {
  if (!basis.square() || basis.rows() != system.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "basis must be n x n");
  }
}

QuboMatrix WindowBuilder::build(const DyadicVector& center, const EncodingSpec& spec) const {
  const std::size_t n = system_.size();
  if (spec.n_vars() != n || center.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "encoding, center and system sizes differ");
  }
  // g = (A V)^T (b - A c), from the exact shifted right-hand side.
  const std::vector<DoubleDouble> shifted = residual_exact(system_, center).to_double_doubles();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    DoubleDouble acc;
    for (std::size_t r = 0; r < n; ++r) acc += shifted[r] * effective_(r, i);
    g[i] = acc.to_double();
  }

  const std::size_t k = spec.bits_per_sign();
  const std::size_t n_qubits = spec.n_qubits();
  std::vector<std::size_t> var_of(n_qubits);
  std::vector<int> exp_of(n_qubits);
  std::vector<double> sign_of(n_qubits);
  for (std::size_t i = 0; i < n; ++i)
    for (int s = 0; s < 2; ++s)
      for (std::size_t t = 0; t < k; ++t) {
        const std::size_t p = qubit_index(spec, i, s == 0 ? Sign::kPlus : Sign::kMinus, t);
        var_of[p] = i;
        exp_of[p] = spec.l_lo() + static_cast<int>(t);
        sign_of[p] = s == 0 ? 1.0 : -1.0;
      }

  // With y = sum_p s_p 2^{e_p} q_p and q_p^2 = q_p:
  //   Q_pp  = G_ii 4^{e_p} - 2 s_p 2^{e_p} g_i
  //   Q_pp' = 2 s_p s_p' 2^{e_p + e_p'} G_ij
  // Power-of-two scalings are exact, so each coefficient rounds once.
  std::vector<double> linear(n_qubits);
  for (std::size_t p = 0; p < n_qubits; ++p) {
    const std::size_t i = var_of[p];
    DoubleDouble v(std::ldexp(gram_(i, i), 2 * exp_of[p]));
    v -= std::ldexp(sign_of[p] * g[i], exp_of[p] + 1);
    linear[p] = v.to_double();
  }
  std::map<QubitPair, double> quadratic;
  for (std::size_t p = 0; p < n_qubits; ++p)
    for (std::size_t p2 = p + 1; p2 < n_qubits; ++p2) {
      const double v = std::ldexp(sign_of[p] * sign_of[p2] * gram_(var_of[p], var_of[p2]), exp_of[p] + exp_of[p2] + 1);
      if (std::abs(v) >= kPruneBelow) quadratic.emplace_hint(quadratic.end(), QubitPair{p, p2}, v);
    }
  return QuboMatrix(std::move(linear), std::move(quadratic));
}

QuboMatrix build_window(const LinearSystem& system, const DyadicVector& center, const EncodingSpec& spec) {
  return WindowBuilder(system).build(center, spec);
}

DoubleDouble target_min_energy(const LinearSystem& system, const DyadicVector& center) {
  return -residual_norm_sq(system, center);
}

}  // namespace qrefine
