#include "qrefine/double_double.hpp"

namespace qrefine {
namespace {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}

}  // namespace

DoubleDouble DoubleDouble::from_parts(double hi, double lo) {
  DoubleDouble r;
  quick_two_sum(hi, lo, r.hi_, r.lo_);
  return r;
}

DoubleDouble DoubleDouble::product(double a, double b) {
  DoubleDouble r;
  r.hi_ = a * b;
  r.lo_ = std::fma(a, b, -r.hi_);
  return r;
}

DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& o) {
  double s, e, t, f;
  two_sum(hi_, o.hi_, s, e);
  two_sum(lo_, o.lo_, t, f);
  e += t;
  quick_two_sum(s, e, s, e);
  e += f;
  quick_two_sum(s, e, hi_, lo_);
  return *this;
}

DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& o) {
  DoubleDouble p = product(hi_, o.hi_);
  double cross = hi_ * o.lo_ + lo_ * o.hi_;
  *this = from_parts(p.hi_, p.lo_ + cross);
  return *this;
}

DoubleDouble sqrt(const DoubleDouble& x) {
  if (x.hi() <= 0.0) return DoubleDouble(0.0);
  // One Newton step from the double approximation doubles the precision.
  double approx = std::sqrt(x.hi());
  DoubleDouble sq = DoubleDouble::product(approx, approx);
  DoubleDouble diff = x - sq;
  return DoubleDouble::from_parts(approx, diff.hi() / (2.0 * approx));
}

}  // namespace qrefine
