#include "qrefine/encoding.hpp"

#include <string>

#include "qrefine/error.hpp"

namespace qrefine {

EncodingSpec::EncodingSpec(std::size_t n_vars, int l_lo, int l_hi) : n_vars_(n_vars), l_lo_(l_lo), l_hi_(l_hi) {
  if (n_vars == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one variable");
  if (l_lo > l_hi) throw Error(ErrorCode::kInvalidArgument, "window low edge exceeds high edge");
  if (l_hi - l_lo + 1 > 30) throw Error(ErrorCode::kInvalidArgument, "at most 30 bits per sign are supported");
}

std::size_t qubit_index(const EncodingSpec& spec, std::size_t var, Sign sign, std::size_t bit) {
  const std::size_t k = spec.bits_per_sign();
  if (var >= spec.n_vars() || bit >= k) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "variable " + std::to_string(var) + ", bit " + std::to_string(bit) + " outside the layout");
  }
  return var * 2 * k + (sign == Sign::kMinus ? k : 0) + bit;
}

std::vector<std::int64_t> decode_offsets(const BitVector& bits, const EncodingSpec& spec) {
  if (bits.size() != spec.n_qubits()) {
    throw Error(ErrorCode::kLengthMismatch, "expected " + std::to_string(spec.n_qubits()) + " bits, got " +
                                                std::to_string(bits.size()));
  }
  const std::size_t k = spec.bits_per_sign();
  std::vector<std::int64_t> offsets(spec.n_vars(), 0);
  for (std::size_t i = 0; i < spec.n_vars(); ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      const std::int64_t w = std::int64_t{1} << t;
      if (bits[qubit_index(spec, i, Sign::kPlus, t)]) offsets[i] += w;
      if (bits[qubit_index(spec, i, Sign::kMinus, t)]) offsets[i] -= w;
    }
  }
  return offsets;
}

DyadicVector offsets_to_increment(const std::vector<std::int64_t>& offsets, const EncodingSpec& spec) {
  std::vector<BigInt> m(offsets.begin(), offsets.end());
  return DyadicVector(std::move(m), spec.l_lo());
}

DyadicVector decode(const BitVector& bits, const EncodingSpec& spec, const DyadicVector& center) {
  if (center.size() != spec.n_vars()) throw Error(ErrorCode::kLengthMismatch, "center length differs from n_vars");
  return center + offsets_to_increment(decode_offsets(bits, spec), spec);
}

BitVector canonical_bits(const std::vector<std::int64_t>& offsets, const EncodingSpec& spec) {
  if (offsets.size() != spec.n_vars()) throw Error(ErrorCode::kLengthMismatch, "offset count differs from n_vars");
  BitVector bits(spec.n_qubits(), 0);
  const std::size_t k = spec.bits_per_sign();
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const std::int64_t v = offsets[i];
    const std::uint64_t mag = static_cast<std::uint64_t>(v < 0 ? -v : v);
    if (mag > static_cast<std::uint64_t>(spec.max_offset())) {
      throw Error(ErrorCode::kIndexOutOfRange, "offset outside the window");
    }
    const Sign sign = v < 0 ? Sign::kMinus : Sign::kPlus;
    for (std::size_t t = 0; t < k; ++t)
      if ((mag >> t) & 1U) bits[qubit_index(spec, i, sign, t)] = 1;
  }
  return bits;
}

std::vector<DyadicVector> enumerate_grid(const EncodingSpec& spec, const DyadicVector& center) {
  if (center.size() != spec.n_vars()) throw Error(ErrorCode::kLengthMismatch, "center length differs from n_vars");
  const std::int64_t per_axis = 2 * spec.max_offset() + 1;
  std::int64_t total = 1;
  for (std::size_t i = 0; i < spec.n_vars(); ++i) {
    total *= per_axis;
    if (total > 1'000'000) throw Error(ErrorCode::kTooLarge, "grid exceeds 10^6 points");
  }
  std::vector<DyadicVector> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::int64_t> offsets(spec.n_vars(), -spec.max_offset());
  for (std::int64_t count = 0; count < total; ++count) {
    out.push_back(center + offsets_to_increment(offsets, spec));
    for (std::size_t i = spec.n_vars(); i-- > 0;) {
      if (++offsets[i] <= spec.max_offset()) break;
      offsets[i] = -spec.max_offset();
    }
  }
  return out;
}

DyadicVector apply_basis(const Matrix& v, const DyadicVector& u) {
  if (v.cols() != u.size()) throw Error(ErrorCode::kDimensionMismatch, "basis width differs from coordinate count");
  std::vector<Dyadic> out;
  out.reserve(v.rows());
  for (std::size_t r = 0; r < v.rows(); ++r) {
    Dyadic acc;
    for (std::size_t c = 0; c < v.cols(); ++c) acc = acc + Dyadic::from_double(v(r, c)) * u.component(c);
    out.push_back(std::move(acc));
  }
  return DyadicVector::from_components(out);
}

}  // namespace qrefine
