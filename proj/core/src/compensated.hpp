#ifndef HYPERRED_COMPENSATED_HPP
#define HYPERRED_COMPENSATED_HPP

#include <cmath>

namespace hyperred::detail {

// Unevaluated sum hi + lo of two binary64 numbers, |lo| <= ulp(hi)/2.
struct Compensated {
  double hi = 0.0;
  double lo = 0.0;

  constexpr Compensated() = default;
  constexpr Compensated(double v) : hi(v) {}  // NOLINT(google-explicit-constructor)
  constexpr Compensated(double h, double l) : hi(h), lo(l) {}

  double value() const noexcept { return hi + lo; }
};

inline Compensated quick_two_sum(double a, double b) noexcept {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Compensated two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Compensated two_prod(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Compensated operator+(Compensated a, Compensated b) noexcept {
  Compensated s = two_sum(a.hi, b.hi);
  const Compensated t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Compensated operator*(Compensated a, Compensated b) noexcept {
  Compensated p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline Compensated operator/(Compensated a, Compensated b) noexcept {
  const double q1 = a.hi / b.hi;
  const Compensated p = b * Compensated(q1);
  Compensated r = two_sum(a.hi, -p.hi);
  r.lo += a.lo - p.lo;
  const double q2 = (r.hi + r.lo) / b.hi;
  return quick_two_sum(q1, q2);
}

}  // namespace hyperred::detail

#endif  // HYPERRED_COMPENSATED_HPP
