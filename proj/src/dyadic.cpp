#include "qrefine/dyadic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "qrefine/error.hpp"

namespace qrefine {
namespace {

// Number of trailing zero bits of a nonzero magnitude.
std::int64_t trailing_zeros(const BigInt& v) {
  return static_cast<std::int64_t>(boost::multiprecision::lsb(abs(v)));
}

BigInt pow_big(unsigned base, std::uint64_t e) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e));
}

}  // namespace

double dyadic_to_double(const BigInt& mantissa, std::int64_t exponent) {
  if (mantissa == 0) return 0.0;
  const bool negative = mantissa < 0;
  BigInt mag = abs(mantissa);
  const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(mag)) + 1;
  // Value lies in [2^top, 2^(top+1)); subnormal results carry fewer bits.
  const std::int64_t top = bits - 1 + exponent;
  std::int64_t precision = 53;
  if (top < -1022) precision = 53 - (-1022 - top);
  const std::int64_t shift = bits - precision;
  double result;
  if (shift <= 0) {
    result = std::ldexp(mag.convert_to<double>(), static_cast<int>(std::max<std::int64_t>(
                                                      exponent, -100000)));
  } else {
    BigInt kept = mag >> static_cast<unsigned>(shift);
    BigInt rest = mag - (kept << static_cast<unsigned>(shift));
    BigInt half = BigInt(1) << static_cast<unsigned>(shift - 1);
    if (rest > half || (rest == half && (kept & 1) != 0)) ++kept;
    const std::int64_t e = std::clamp<std::int64_t>(shift + exponent, -100000, 100000);
    result = std::ldexp(kept.convert_to<double>(), static_cast<int>(e));
  }
  return negative ? -result : result;
}

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto tz = trailing_zeros(mantissa_);
  if (tz > 0) {
    mantissa_ >>= static_cast<unsigned>(tz);
    exponent_ += tz;
  }
}

Dyadic Dyadic::from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite value");
  if (v == 0.0) return {};
  int e = 0;
  const double frac = std::frexp(v, &e);
  // frac * 2^53 is an integer for every finite double.
  const auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
  return Dyadic(BigInt(m), static_cast<std::int64_t>(e) - 53);
}

Dyadic Dyadic::parse_decimal(std::string_view text) {
  auto fail = [&](const char* why) {
    throw Error(ErrorCode::kParse, "'" + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
  std::string digits;
  std::int64_t scale = 0;  // value = digits * 10^scale
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) fail("expected a decimal number");
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::int64_t e = 0;
    const char* first = text.data() + pos;
    if (pos < text.size() && text[pos] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), e);
    if (ec != std::errc() || ptr == first) fail("malformed exponent");
    pos = static_cast<std::size_t>(ptr - text.data());
    scale += e;
  }
  if (pos != text.size()) fail("trailing characters");
  if (std::llabs(scale) > 100000) fail("exponent out of range");

  // cpp_int reads a leading 0 as an octal prefix.
  const auto first_nonzero = digits.find_first_not_of('0');
  if (first_nonzero == std::string::npos) return {};
  BigInt n(digits.substr(first_nonzero));
  if (negative) n = -n;
  if (n == 0) return {};
  if (scale >= 0) return Dyadic(n * pow_big(10, static_cast<std::uint64_t>(scale)), 0);
  // n / 10^k = (n / 5^k) * 2^-k, which is dyadic iff 5^k divides n.
  const auto k = static_cast<std::uint64_t>(-scale);
  const BigInt five = pow_big(5, k);
  if (n % five != 0) fail("not exactly representable as a dyadic rational");
  return Dyadic(n / five, scale);
}

double Dyadic::to_double() const { return dyadic_to_double(mantissa_, exponent_); }

DoubleDouble Dyadic::to_double_double() const {
  const double hi = to_double();
  const double lo = (*this - from_double(hi)).to_double();
  return DoubleDouble::from_parts(hi, lo);
}

std::string Dyadic::to_exact_decimal() const {
  if (exponent_ >= 0) {
    BigInt v = mantissa_ << static_cast<unsigned>(exponent_);
    return v.str();
  }
  const auto k = static_cast<std::uint64_t>(-exponent_);
  BigInt scaled = abs(mantissa_) * pow_big(5, k);
  std::string digits = scaled.str();
  if (digits.size() <= k) digits.insert(0, k - digits.size() + 1, '0');
  std::string out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
  while (out.back() == '0') out.pop_back();
  if (out.back() == '.') out.pop_back();
  return mantissa_ < 0 ? "-" + out : out;
}

std::string Dyadic::to_significant(int digits) const {
  if (digits < 1) throw Error(ErrorCode::kInvalidArgument, "digits must be >= 1");
  if (is_zero()) return "0";
  // Exact value = all * 10^-frac_len.
  const std::int64_t frac_len = exponent_ < 0 ? -exponent_ : 0;
  BigInt all = exponent_ < 0 ? abs(mantissa_) * pow_big(5, static_cast<std::uint64_t>(frac_len))
                             : abs(mantissa_) << static_cast<unsigned>(exponent_);
  std::string s = all.str();
  // Decimal exponent of the leading digit.
  std::int64_t exp10 = static_cast<std::int64_t>(s.size()) - 1 - frac_len;
  if (static_cast<std::int64_t>(s.size()) > digits) {
    const std::string tail = s.substr(static_cast<std::size_t>(digits));
    s.resize(static_cast<std::size_t>(digits));
    const bool above_half =
        tail[0] > '5' || (tail[0] == '5' && tail.find_first_not_of('0', 1) != std::string::npos);
    const bool tie = tail[0] == '5' && !above_half;
    if (above_half || (tie && (s.back() - '0') % 2 == 1)) {
      int i = static_cast<int>(s.size()) - 1;
      while (i >= 0 && s[static_cast<std::size_t>(i)] == '9') s[static_cast<std::size_t>(i--)] = '0';
      if (i < 0) {
        s.insert(s.begin(), '1');
        s.pop_back();
        ++exp10;
      } else {
        ++s[static_cast<std::size_t>(i)];
      }
    }
  }
  while (s.size() > 1 && s.back() == '0') s.pop_back();

  std::string out;
  if (exp10 < -4 || exp10 >= digits) {
    out = s.substr(0, 1);
    if (s.size() > 1) out += "." + s.substr(1);
    char buf[32];
    std::snprintf(buf, sizeof buf, "e%c%02lld", exp10 < 0 ? '-' : '+',
                  static_cast<long long>(std::llabs(exp10)));
    out += buf;
  } else if (exp10 < 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exp10 - 1), '0') + s;
  } else {
    const auto int_len = static_cast<std::size_t>(exp10 + 1);
    if (s.size() <= int_len) {
      out = s + std::string(int_len - s.size(), '0');
    } else {
      out = s.substr(0, int_len) + "." + s.substr(int_len);
    }
  }
  return mantissa_ < 0 ? "-" + out : out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  BigInt sum = (a.mantissa_ << static_cast<unsigned>(a.exponent_ - e)) +
               (b.mantissa_ << static_cast<unsigned>(b.exponent_ - e));
  return Dyadic(std::move(sum), e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

DyadicVector::DyadicVector(std::vector<BigInt> mantissas, std::int64_t exponent)
    : mantissas_(std::move(mantissas)), exponent_(exponent) {
  normalize();
}

DyadicVector DyadicVector::from_doubles(std::span<const double> values) {
  std::vector<Dyadic> parts;
  parts.reserve(values.size());
  for (double v : values) parts.push_back(Dyadic::from_double(v));
  return from_components(parts);
}

DyadicVector DyadicVector::from_components(std::span<const Dyadic> values) {
  std::int64_t e = 0;
  bool any = false;
  for (const auto& v : values) {
    if (v.is_zero()) continue;
    e = any ? std::min(e, v.exponent()) : v.exponent();
    any = true;
  }
  std::vector<BigInt> m;
  m.reserve(values.size());
  for (const auto& v : values) {
    m.push_back(v.is_zero() ? BigInt(0) : v.mantissa() << static_cast<unsigned>(v.exponent() - e));
  }
  return DyadicVector(std::move(m), e);
}

bool DyadicVector::is_zero() const {
  return std::all_of(mantissas_.begin(), mantissas_.end(), [](const BigInt& m) { return m == 0; });
}

std::vector<BigInt> DyadicVector::mantissas_at(std::int64_t exponent) const {
  if (exponent <= exponent_) {
    std::vector<BigInt> out;
    out.reserve(mantissas_.size());
    const auto shift = static_cast<unsigned>(exponent_ - exponent);
    for (const auto& m : mantissas_) out.push_back(m << shift);
    return out;
  }
  if (!is_zero()) {
    throw Error(ErrorCode::kInvalidArgument, "rescaling to a coarser exponent is inexact");
  }
  return mantissas_;
}

std::vector<double> DyadicVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(mantissas_.size());
  for (const auto& m : mantissas_) out.push_back(dyadic_to_double(m, exponent_));
  return out;
}

std::vector<DoubleDouble> DyadicVector::to_double_doubles() const {
  std::vector<DoubleDouble> out;
  out.reserve(mantissas_.size());
  for (std::size_t i = 0; i < mantissas_.size(); ++i) out.push_back(component(i).to_double_double());
  return out;
}

DyadicVector& DyadicVector::operator+=(const DyadicVector& other) {
  if (other.size() != size()) {
    throw Error(ErrorCode::kLengthMismatch, "dyadic vectors differ in length");
  }
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  const std::int64_t e = std::min(exponent_, other.exponent_);
  const auto mine = static_cast<unsigned>(exponent_ - e);
  const auto theirs = static_cast<unsigned>(other.exponent_ - e);
  for (std::size_t i = 0; i < mantissas_.size(); ++i) {
    mantissas_[i] = (mantissas_[i] << mine) + (other.mantissas_[i] << theirs);
  }
  exponent_ = e;
  normalize();
  return *this;
}

DyadicVector& DyadicVector::operator-=(const DyadicVector& other) { return *this += -other; }

DyadicVector DyadicVector::operator-() const {
  DyadicVector out = *this;
  for (auto& m : out.mantissas_) m = -m;
  return out;
}

void DyadicVector::normalize() {
  if (is_zero()) {
    exponent_ = 0;
    return;
  }
  std::int64_t tz = -1;
  for (const auto& m : mantissas_) {
    if (m == 0) continue;
    const auto t = trailing_zeros(m);
    tz = tz < 0 ? t : std::min(tz, t);
  }
  if (tz > 0) {
    for (auto& m : mantissas_) m >>= static_cast<unsigned>(tz);
    exponent_ += tz;
  }
}

}  // namespace qrefine
