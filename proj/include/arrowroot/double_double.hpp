#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace arrowroot {

// Unevaluated pair hi + lo carrying roughly twice the working precision.
// Invariant (renormalized form): hi = fl(hi + lo), i.e. |lo| <= ulp(hi)/2,
// and lo = 0 whenever hi = 0. Every operator below renormalizes on exit.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  DoubleDouble() = default;
  DoubleDouble(double x) : hi(x), lo(0.0) {}
  DoubleDouble(double h, double l) : hi(h), lo(l) {}
};

/* Computes fl(a+b) and err(a+b). Assumes |a| >= |b| or a == 0. 3 flops. */
inline DoubleDouble quick_two_sum(double a, double b) {
  double s = a + b;
  double e = b - (s - a);
  return {s, e};
}

/* Computes fl(a+b) and err(a+b) for any a, b. 6 flops. */
inline DoubleDouble two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

/* Computes fl(a*b) and err(a*b) via fused multiply-add. */
inline DoubleDouble two_prod_fma(double a, double b) {
  double p = a * b;
  double e = std::fma(a, b, -p);
  return {p, e};
}

/* Veltkamp split: a = x + y with x holding the top 26 bits. Valid for
   |a| <= 2^996; beyond that the 2^27+1 scaling overflows. */
inline void split(double a, double& x, double& y) {
  double t = 134217729.0 * a;  // 2^27 + 1
  x = t - (t - a);
  y = a - x;
}

/* Computes fl(a*b) and err(a*b) without FMA. Valid for |a|, |b| <= 2^996. */
inline DoubleDouble two_prod_split(double a, double b) {
  double p = a * b;
  double ah, al, bh, bl;
  split(a, ah, al);
  split(b, bh, bl);
  double e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
  return {p, e};
}

#if defined(ARROWROOT_NO_FMA)
inline DoubleDouble two_prod(double a, double b) { return two_prod_split(a, b); }
#else
inline DoubleDouble two_prod(double a, double b) { return two_prod_fma(a, b); }
#endif

inline DoubleDouble operator-(const DoubleDouble& x) { return {-x.hi, -x.lo}; }

/* Accurate pair addition, error <= 3 u^2 relative. 20 flops. */
inline DoubleDouble operator+(const DoubleDouble& x, const DoubleDouble& y) {
  DoubleDouble s = two_sum(x.hi, y.hi);
  if (!std::isfinite(s.hi)) return {s.hi, 0.0};  // overflow/NaN propagates
  DoubleDouble t = two_sum(x.lo, y.lo);
  double c = s.lo + t.hi;
  DoubleDouble v = quick_two_sum(s.hi, c);
  double w = t.lo + v.lo;
  return quick_two_sum(v.hi, w);
}

inline DoubleDouble operator-(const DoubleDouble& x, const DoubleDouble& y) {
  return x + (-y);
}

/* Pair product, error <= 5 u^2 relative. */
inline DoubleDouble operator*(const DoubleDouble& x, const DoubleDouble& y) {
  DoubleDouble c = two_prod(x.hi, y.hi);
  if (!std::isfinite(c.hi)) return {c.hi, 0.0};  // overflow/NaN propagates
#if defined(ARROWROOT_NO_FMA)
  double t = x.lo * y.lo + (x.hi * y.lo + x.lo * y.hi);
#else
  double t = std::fma(x.hi, y.lo, std::fma(x.lo, y.hi, x.lo * y.lo));
#endif
  return quick_two_sum(c.hi, c.lo + t);
}

/* Pair quotient with two correction terms, error ~ 2.3 u^2 relative. */
inline DoubleDouble operator/(const DoubleDouble& x, const DoubleDouble& y) {
  if (y.hi == 0.0) throw std::domain_error("DoubleDouble: division by zero");
  double q1 = x.hi / y.hi;
  if (!std::isfinite(q1)) return {q1, 0.0};
  DoubleDouble r = x - y * DoubleDouble(q1);
  double q2 = r.hi / y.hi;
  r = r - y * DoubleDouble(q2);
  double q3 = r.hi / y.hi;
  DoubleDouble s = quick_two_sum(q1, q2);
  return s + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& x, const DoubleDouble& y) { return x = x + y; }
inline DoubleDouble& operator-=(DoubleDouble& x, const DoubleDouble& y) { return x = x - y; }
inline DoubleDouble& operator*=(DoubleDouble& x, const DoubleDouble& y) { return x = x * y; }
inline DoubleDouble& operator/=(DoubleDouble& x, const DoubleDouble& y) { return x = x / y; }

/* Square root via one Newton correction on 1/sqrt(hi), error ~ 3.5 u^2. */
inline DoubleDouble sqrt(const DoubleDouble& v) {
  if (v.hi == 0.0) return {0.0, 0.0};
  if (v.hi < 0.0) throw std::domain_error("DoubleDouble: sqrt of negative value");
  if (std::isinf(v.hi)) return v;
  double x = 1.0 / std::sqrt(v.hi);
  double ax = v.hi * x;
  return DoubleDouble(ax) + (v - two_prod(ax, ax)) * DoubleDouble(x * 0.5);
}

// Round-to-nearest of the represented value.
inline double to_double(const DoubleDouble& x) { return x.hi + x.lo; }

inline DoubleDouble abs(const DoubleDouble& x) { return x.hi < 0.0 ? -x : x; }

// Exact scaling by 2^e (both halves, no rounding while in range).
inline DoubleDouble ldexp(const DoubleDouble& x, int e) {
  return {std::ldexp(x.hi, e), std::ldexp(x.lo, e)};
}

inline bool isfinite(const DoubleDouble& x) {
  return std::isfinite(x.hi) && std::isfinite(x.lo);
}
inline bool isnan(const DoubleDouble& x) {
  return std::isnan(x.hi) || std::isnan(x.lo);
}

inline bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi == b.hi && a.lo == b.lo;
}
inline bool operator!=(const DoubleDouble& a, const DoubleDouble& b) { return !(a == b); }
inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
inline bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
inline bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }

inline int sign(const DoubleDouble& a) {
  if (a.hi > 0.0) return 1;
  if (a.hi < 0.0) return -1;
  return 0;  // renormalized pair with hi == 0 represents exactly 0
}

inline std::ostream& operator<<(std::ostream& os, const DoubleDouble& x) {
  return os << "(" << x.hi << ", " << x.lo << ")";
}

}  // namespace arrowroot
