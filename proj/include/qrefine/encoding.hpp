#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qrefine/dyadic.hpp"
#include "qrefine/linalg.hpp"

namespace qrefine {

enum class Sign { kPlus, kMinus };

/// Two-sided radix-2 window: variable i moves by
///   sum_{t=l_lo}^{l_hi} 2^t (q+_{i,t} - q-_{i,t}).
class EncodingSpec {
 public:
  EncodingSpec(std::size_t n_vars, int l_lo, int l_hi);

  std::size_t n_vars() const { return n_vars_; }
  int l_lo() const { return l_lo_; }
  int l_hi() const { return l_hi_; }
  std::size_t bits_per_sign() const { return static_cast<std::size_t>(l_hi_ - l_lo_ + 1); }
  std::size_t n_qubits() const { return 2 * bits_per_sign() * n_vars_; }
  /// Largest per-variable offset in units of 2^l_lo, i.e. 2^k - 1.
  std::int64_t max_offset() const { return (std::int64_t{1} << bits_per_sign()) - 1; }

  friend bool operator==(const EncodingSpec&, const EncodingSpec&) = default;

 private:
  std::size_t n_vars_;
  int l_lo_;
  int l_hi_;
};

using BitVector = std::vector<std::uint8_t>;

/// Layout is variable-major, then sign, then bit: var*2k + (minus ? k : 0) + bit.
std::size_t qubit_index(const EncodingSpec& spec, std::size_t var, Sign sign, std::size_t bit);

/// Signed per-variable offsets in units of 2^l_lo.
std::vector<std::int64_t> decode_offsets(const BitVector& bits, const EncodingSpec& spec);

/// center + increment(bits), exact.
DyadicVector decode(const BitVector& bits, const EncodingSpec& spec, const DyadicVector& center);

/// Offsets (units of 2^l_lo) as an exact dyadic increment.
DyadicVector offsets_to_increment(const std::vector<std::int64_t>& offsets, const EncodingSpec& spec);

/// Representative bits with no (variable, bit) pair set on both signs.
BitVector canonical_bits(const std::vector<std::int64_t>& offsets, const EncodingSpec& spec);

/// Every distinct point reachable from `center`, each once, in lexicographic
/// offset order. Throws kTooLarge past 10^6 points.
std::vector<DyadicVector> enumerate_grid(const EncodingSpec& spec, const DyadicVector& center);

/// V * u, exact (the entries of V are dyadic).
DyadicVector apply_basis(const Matrix& v, const DyadicVector& u);

}  // namespace qrefine
