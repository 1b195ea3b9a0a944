#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qrefine/double_double.hpp"

namespace qrefine {

using BigInt = boost::multiprecision::cpp_int;

/// Exact value mantissa * 2^exponent. Always normalized: the mantissa is odd,
/// or zero with exponent 0, so equal values compare equal structurally.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt mantissa, std::int64_t exponent);

  static Dyadic from_double(double v);
  /// Parses a decimal literal such as "-12.375" or "3e-2"; throws
  /// ErrorCode::kParse unless the literal denotes a dyadic rational.
  static Dyadic parse_decimal(std::string_view text);

  const BigInt& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == 0; }
  int sign() const { return mantissa_.sign(); }

  /// Correctly rounded (nearest, ties to even).
  double to_double() const;
  DoubleDouble to_double_double() const;
  /// Full decimal expansion; every dyadic has a terminating one.
  std::string to_exact_decimal() const;
  /// Rounded to `digits` significant digits, printf("%g")-style layout.
  std::string to_significant(int digits) const;

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  BigInt mantissa_ = 0;
  std::int64_t exponent_ = 0;
};

/// Correctly rounded conversion of mantissa * 2^exponent.
double dyadic_to_double(const BigInt& mantissa, std::int64_t exponent);

/// Fixed-length vector of dyadics sharing one exponent. Normalized like
/// Dyadic: the exponent is as large as the mantissas allow.
class DyadicVector {
 public:
  DyadicVector() = default;
  explicit DyadicVector(std::size_t n) : mantissas_(n, BigInt(0)) {}
  DyadicVector(std::vector<BigInt> mantissas, std::int64_t exponent);

  static DyadicVector from_doubles(std::span<const double> values);
  static DyadicVector from_components(std::span<const Dyadic> values);

  std::size_t size() const { return mantissas_.size(); }
  std::int64_t exponent() const { return exponent_; }
  const BigInt& mantissa(std::size_t i) const { return mantissas_.at(i); }
  Dyadic component(std::size_t i) const { return Dyadic(mantissas_.at(i), exponent_); }
  bool is_zero() const;

  /// Mantissas expressed at `exponent`; throws kInvalidArgument if that
  /// would drop nonzero bits.
  std::vector<BigInt> mantissas_at(std::int64_t exponent) const;

  std::vector<double> to_doubles() const;
  std::vector<DoubleDouble> to_double_doubles() const;

  DyadicVector& operator+=(const DyadicVector& other);
  DyadicVector& operator-=(const DyadicVector& other);
  friend DyadicVector operator+(DyadicVector a, const DyadicVector& b) { return a += b; }
  friend DyadicVector operator-(DyadicVector a, const DyadicVector& b) { return a -= b; }
  DyadicVector operator-() const;
  friend bool operator==(const DyadicVector& a, const DyadicVector& b) = default;

 private:
  void normalize();

  std::vector<BigInt> mantissas_;
  std::int64_t exponent_ = 0;
};

}  // namespace qrefine
