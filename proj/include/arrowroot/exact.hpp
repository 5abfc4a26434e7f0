#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arrowroot/double_double.hpp"

namespace arrowroot::exact {

// Arbitrary-precision signed integer, sign-magnitude over 64-bit limbs.
// Covers what the reference computations need: +, -, *, shifts, compares,
// decimal I/O and correctly rounded conversion to double.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v);

  static BigInt from_decimal(std::string_view text);
  static BigInt factorial(unsigned n);

  std::string to_decimal() const;

  // Correctly rounded (nearest, ties to even); overflows to +-inf.
  double to_double() const;

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  std::size_t bit_length() const;
  std::size_t trailing_zero_bits() const;
  std::uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

  BigInt shifted_left(std::size_t bits) const;
  BigInt shifted_right(std::size_t bits) const;  // truncates toward zero

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  BigInt operator-() const;

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b);
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

 private:
  int sign_ = 0;                       // -1, 0, +1
  std::vector<std::uint64_t> limbs_;   // little-endian, no leading zero limb

  void trim();
  static int cmp_mag(const BigInt& a, const BigInt& b);
  static BigInt add_mag(const BigInt& a, const BigInt& b);
  static BigInt sub_mag(const BigInt& a, const BigInt& b);  // |a| >= |b|
  std::uint64_t div_small(std::uint64_t divisor);           // in place, returns remainder
  void mul_small_add(std::uint64_t factor, std::uint64_t addend);
};

// Exact dyadic rational m * 2^e. This is the closure of the binary
// floating-point numbers under +, -, *, which is all the oracle paths need;
// relative-error checks against it are phrased multiplicatively so no
// division is ever required.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(const BigInt& mantissa, std::int64_t exponent = 0);
  Dyadic(std::int64_t v) : Dyadic(BigInt(v)) {}

  static Dyadic from_double(double x);  // exact; throws on NaN/inf
  double to_double() const;             // correctly rounded

  int sign() const { return mant_.sign(); }
  bool is_zero() const { return mant_.is_zero(); }
  const BigInt& mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }

  Dyadic operator-() const;
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

  Dyadic half() const { return Dyadic(mant_, exp_ - 1); }
  static Dyadic scaled(const Dyadic& x, std::int64_t e);  // x * 2^e

  friend bool operator==(const Dyadic& a, const Dyadic& b);
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b);
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

  std::string to_string() const;  // "<mantissa>*2^<exponent>"

 private:
  BigInt mant_;           // odd or zero
  std::int64_t exp_ = 0;
  void normalize();
};

inline Dyadic abs(const Dyadic& x) { return x.sign() < 0 ? -x : x; }
Dyadic from_pair(const DoubleDouble& x);  // hi + lo, exact

std::vector<Dyadic> to_dyadic(std::span<const double> coeffs);

// Exact Horner evaluation; coefficients in descending powers.
Dyadic horner(std::span<const Dyadic> coeffs, const Dyadic& x);

// Sum of |a_i| |x|^(n-i), the numerator of the evaluation condition number.
Dyadic horner_abs(std::span<const Dyadic> coeffs, const Dyadic& x);

struct Enclosure {
  Dyadic lo, hi;
  Dyadic midpoint() const { return (lo + hi).half(); }
};

// Bisection to width <= 2^-bits * max(1, |root|). Precondition: the
// polynomial changes sign across [lo, hi] (or vanishes at an endpoint).
Enclosure bisect_root(std::span<const Dyadic> coeffs, Dyadic lo, Dyadic hi,
                      unsigned bits);

// Exact characteristic polynomial det(xI - A) of an arrowhead matrix with
// diagonal d, arrow column z and tip alpha, expanded over dyadic rationals.
// coeffs holds the monic polynomial (descending); tilde[i] is the sum of
// absolute values of all expansion terms contributing to coeffs[i], the
// natural condition number of that coefficient's summation.
struct CharPoly {
  std::vector<Dyadic> coeffs;
  std::vector<Dyadic> tilde;
};
CharPoly char_poly(std::span<const double> d, std::span<const DoubleDouble> z,
                   const DoubleDouble& alpha);

}  // namespace arrowroot::exact
