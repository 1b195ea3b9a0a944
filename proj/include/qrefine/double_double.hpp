#pragma once

#include <cmath>
#include <compare>

namespace qrefine {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, about 106 bits of precision.
// Built from the usual error-free transforms (TwoSum, FMA-based TwoProd).
class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double v) : hi_(v), lo_(0.0) {}  // NOLINT: implicit by intent
  static DoubleDouble from_parts(double hi, double lo);

  double hi() const { return hi_; }
  double lo() const { return lo_; }
  double to_double() const { return hi_ + lo_; }

  static DoubleDouble product(double a, double b);

  DoubleDouble operator-() const { return from_parts(-hi_, -lo_); }
  DoubleDouble& operator+=(const DoubleDouble& o);
  DoubleDouble& operator-=(const DoubleDouble& o) { return *this += -o; }
  DoubleDouble& operator*=(const DoubleDouble& o);

  friend DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) { return a += b; }
  friend DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) { return a -= b; }
  friend DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b) { return a *= b; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

DoubleDouble sqrt(const DoubleDouble& x);
inline DoubleDouble abs(const DoubleDouble& x) { return x.hi() < 0 ? -x : x; }

}  // namespace qrefine
