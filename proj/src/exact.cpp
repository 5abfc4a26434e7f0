#include "arrowroot/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "arrowroot/errors.hpp"

namespace arrowroot::exact {

namespace {
using u64 = std::uint64_t;
using u128 = unsigned __int128;
}  // namespace

// ---------------------------------------------------------------------------
// BigInt

BigInt::BigInt(std::int64_t v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  u64 mag = v < 0 ? ~static_cast<u64>(v) + 1 : static_cast<u64>(v);
  limbs_.push_back(mag);
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
  if (a.limbs_.size() != b.limbs_.size())
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b) {
  BigInt r;
  const auto& x = a.limbs_.size() >= b.limbs_.size() ? a.limbs_ : b.limbs_;
  const auto& y = a.limbs_.size() >= b.limbs_.size() ? b.limbs_ : a.limbs_;
  r.limbs_.resize(x.size() + 1, 0);
  u64 carry = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    u64 yi = i < y.size() ? y[i] : 0;
    u64 s = x[i] + yi;
    u64 c1 = s < x[i];
    u64 s2 = s + carry;
    carry = c1 + (s2 < s);
    r.limbs_[i] = s2;
  }
  r.limbs_[x.size()] = carry;
  r.sign_ = 1;
  r.trim();
  return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b) {
  BigInt r;
  r.limbs_.resize(a.limbs_.size(), 0);
  u64 borrow = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    u64 bi = i < b.limbs_.size() ? b.limbs_[i] : 0;
    u64 d = a.limbs_[i] - bi;
    u64 b1 = a.limbs_[i] < bi;
    u64 d2 = d - borrow;
    borrow = b1 + (d < borrow);
    r.limbs_[i] = d2;
  }
  r.sign_ = 1;
  r.trim();
  return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.sign_ == b.sign_) {
    BigInt r = BigInt::add_mag(a, b);
    r.sign_ = a.sign_;
    return r;
  }
  int c = BigInt::cmp_mag(a, b);
  if (c == 0) return BigInt();
  BigInt r = c > 0 ? BigInt::sub_mag(a, b) : BigInt::sub_mag(b, a);
  r.sign_ = c > 0 ? a.sign_ : b.sign_;
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.is_zero() || b.is_zero()) return BigInt();
  BigInt r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    u64 carry = 0;
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      u128 cur = static_cast<u128>(a.limbs_[i]) * b.limbs_[j] +
                 r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<u64>(cur);
      carry = static_cast<u64>(cur >> 64);
    }
    r.limbs_[i + b.limbs_.size()] += carry;
  }
  r.sign_ = a.sign_ * b.sign_;
  r.trim();
  return r;
}

bool operator==(const BigInt& a, const BigInt& b) {
  return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
}

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  int c = BigInt::cmp_mag(a, b);
  return a.sign_ >= 0 ? c < 0 : c > 0;
}

std::size_t BigInt::bit_length() const {
  if (is_zero()) return 0;
  u64 top = limbs_.back();
  std::size_t bits = (limbs_.size() - 1) * 64;
  while (top != 0) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

std::size_t BigInt::trailing_zero_bits() const {
  if (is_zero()) return 0;
  std::size_t i = 0;
  while (limbs_[i] == 0) ++i;
  u64 limb = limbs_[i];
  std::size_t bits = i * 64;
  while ((limb & 1) == 0) {
    ++bits;
    limb >>= 1;
  }
  return bits;
}

BigInt BigInt::shifted_left(std::size_t bits) const {
  if (is_zero() || bits == 0) return *this;
  std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
  BigInt r;
  r.sign_ = sign_;
  r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    r.limbs_[i + limb_shift] |= bit_shift ? (limbs_[i] << bit_shift) : limbs_[i];
    if (bit_shift)
      r.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
  }
  r.trim();
  return r;
}

BigInt BigInt::shifted_right(std::size_t bits) const {
  std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
  if (limb_shift >= limbs_.size()) return BigInt();
  BigInt r;
  r.sign_ = sign_;
  r.limbs_.assign(limbs_.size() - limb_shift, 0);
  for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
    r.limbs_[i] = limbs_[i + limb_shift] >> bit_shift;
    if (bit_shift && i + limb_shift + 1 < limbs_.size())
      r.limbs_[i] |= limbs_[i + limb_shift + 1] << (64 - bit_shift);
  }
  r.trim();
  return r;
}

std::uint64_t BigInt::div_small(u64 divisor) {
  u128 rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    u128 cur = (rem << 64) | limbs_[i];
    limbs_[i] = static_cast<u64>(cur / divisor);
    rem = cur % divisor;
  }
  trim();
  return static_cast<u64>(rem);
}

void BigInt::mul_small_add(u64 factor, u64 addend) {
  u64 carry = addend;
  for (auto& limb : limbs_) {
    u128 cur = static_cast<u128>(limb) * factor + carry;
    limb = static_cast<u64>(cur);
    carry = static_cast<u64>(cur >> 64);
  }
  if (carry) limbs_.push_back(carry);
  if (!limbs_.empty() && sign_ == 0) sign_ = 1;
  trim();
}

BigInt BigInt::from_decimal(std::string_view text) {
  BigInt r;
  bool neg = false;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw InputError("BigInt: empty decimal string");
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9')
      throw InputError("BigInt: invalid decimal digit in '" + std::string(text) + "'");
    r.mul_small_add(10, static_cast<u64>(c - '0'));
  }
  if (neg) r.sign_ = -r.sign_;
  return r;
}

std::string BigInt::to_decimal() const {
  if (is_zero()) return "0";
  BigInt tmp = *this;
  std::string digits;
  while (!tmp.is_zero()) {
    u64 rem = tmp.div_small(10'000'000'000'000'000'000ull);  // 10^19
    std::string chunk = std::to_string(rem);
    if (!tmp.is_zero()) chunk.insert(0, 19 - chunk.size(), '0');
    digits.insert(0, chunk);
  }
  return (sign_ < 0 ? "-" : "") + digits;
}

namespace {

// Nearest-even rounding of mag * 2^e2 for a nonnegative magnitude. The final
// ldexp may round a second time when the result lands in the subnormal range;
// oracle values live in the normal range, so this stays a single rounding.
double mag_times_pow2(const BigInt& mag, std::int64_t e2) {
  std::size_t bits = mag.bit_length();
  if (bits == 0) return 0.0;
  double m;
  std::int64_t e;
  if (bits <= 53) {
    m = static_cast<double>(mag.low_u64());  // exact
    e = e2;
  } else {
    BigInt top = mag.shifted_right(bits - 54);
    bool sticky = !(mag - top.shifted_left(bits - 54)).is_zero();
    u64 t = top.low_u64();  // 54 significant bits
    u64 mant = t >> 1;
    if ((t & 1) && (sticky || (mant & 1))) ++mant;
    m = static_cast<double>(mant);  // <= 2^53, exact
    e = e2 + static_cast<std::int64_t>(bits) - 53;
  }
  e = std::clamp<std::int64_t>(e, -100000, 100000);
  return std::ldexp(m, static_cast<int>(e));
}

}  // namespace

double BigInt::to_double() const {
  if (is_zero()) return 0.0;
  double mag = mag_times_pow2(sign_ < 0 ? -*this : *this, 0);
  return sign_ < 0 ? -mag : mag;
}

BigInt BigInt::factorial(unsigned n) {
  BigInt r(1);
  for (unsigned i = 2; i <= n; ++i) r.mul_small_add(i, 0);
  return r;
}

// ---------------------------------------------------------------------------
// Dyadic

void Dyadic::normalize() {
  if (mant_.is_zero()) {
    exp_ = 0;
    return;
  }
  std::size_t tz = mant_.trailing_zero_bits();
  if (tz) {
    mant_ = mant_.shifted_right(tz);
    exp_ += static_cast<std::int64_t>(tz);
  }
}

Dyadic::Dyadic(const BigInt& mantissa, std::int64_t exponent)
    : mant_(mantissa), exp_(exponent) {
  normalize();
}

Dyadic Dyadic::from_double(double x) {
  if (!std::isfinite(x)) throw InputError("Dyadic: non-finite value");
  if (x == 0.0) return Dyadic();
  int e;
  double m = std::frexp(x, &e);
  auto im = static_cast<std::int64_t>(std::ldexp(m, 53));  // exact integer
  return Dyadic(BigInt(im), static_cast<std::int64_t>(e) - 53);
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  double mag = mag_times_pow2(mant_.sign() < 0 ? -mant_ : mant_, exp_);
  return mant_.sign() < 0 ? -mag : mag;
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  r.mant_ = -r.mant_;
  return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::int64_t e = std::min(a.exp_, b.exp_);
  BigInt am = a.mant_.shifted_left(static_cast<std::size_t>(a.exp_ - e));
  BigInt bm = b.mant_.shifted_left(static_cast<std::size_t>(b.exp_ - e));
  return Dyadic(am + bm, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return Dyadic();
  return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
}

Dyadic Dyadic::scaled(const Dyadic& x, std::int64_t e) {
  if (x.is_zero()) return x;
  return Dyadic(x.mant_, x.exp_ + e);
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  return a.exp_ == b.exp_ && a.mant_ == b.mant_;
}

bool operator<(const Dyadic& a, const Dyadic& b) { return (a - b).sign() < 0; }

std::string Dyadic::to_string() const {
  return mant_.to_decimal() + "*2^" + std::to_string(exp_);
}

Dyadic from_pair(const DoubleDouble& x) {
  return Dyadic::from_double(x.hi) + Dyadic::from_double(x.lo);
}

std::vector<Dyadic> to_dyadic(std::span<const double> coeffs) {
  std::vector<Dyadic> r;
  r.reserve(coeffs.size());
  for (double c : coeffs) r.push_back(Dyadic::from_double(c));
  return r;
}

// ---------------------------------------------------------------------------
// Polynomial oracles

Dyadic horner(std::span<const Dyadic> coeffs, const Dyadic& x) {
  if (coeffs.empty()) return Dyadic();
  Dyadic acc = coeffs[0];
  for (std::size_t i = 1; i < coeffs.size(); ++i) acc = acc * x + coeffs[i];
  return acc;
}

Dyadic horner_abs(std::span<const Dyadic> coeffs, const Dyadic& x) {
  if (coeffs.empty()) return Dyadic();
  Dyadic ax = abs(x);
  Dyadic acc = abs(coeffs[0]);
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    acc = acc * ax + abs(coeffs[i]);
  return acc;
}

Enclosure bisect_root(std::span<const Dyadic> coeffs, Dyadic lo, Dyadic hi,
                      unsigned bits) {
  if (hi < lo) std::swap(lo, hi);
  int slo = horner(coeffs, lo).sign();
  int shi = horner(coeffs, hi).sign();
  if (slo == 0) return {lo, lo};
  if (shi == 0) return {hi, hi};
  if (slo == shi)
    throw BracketError("bisect_root: no sign change across bracket");
  while (true) {
    Dyadic mid = (lo + hi).half();
    Dyadic width = hi - lo;
    Dyadic scale = abs(mid);
    if (scale < Dyadic(1)) scale = Dyadic(1);
    if (width <= Dyadic::scaled(scale, -static_cast<std::int64_t>(bits)))
      return {lo, hi};
    int sm = horner(coeffs, mid).sign();
    if (sm == 0) return {mid, mid};
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
  }
}

// ---------------------------------------------------------------------------
// Exact characteristic polynomial of an arrowhead matrix
//
// det(xI - A) = (x - alpha) * prod_j (x - d_j) - sum_j z_j^2 prod_{i!=j} (x - d_i)

namespace {

// multiply polynomial (descending coefficients) by (x - r)
void mul_linear(std::vector<Dyadic>& p, const Dyadic& r) {
  p.push_back(Dyadic());
  for (std::size_t i = p.size() - 1; i > 0; --i)
    p[i] = p[i] - r * p[i - 1];
}

void accumulate(std::vector<Dyadic>& sum, std::vector<Dyadic>& tilde,
                const std::vector<Dyadic>& term, int sign_flip) {
  std::size_t off = sum.size() - term.size();
  for (std::size_t i = 0; i < term.size(); ++i) {
    Dyadic t = sign_flip < 0 ? -term[i] : term[i];
    sum[off + i] = sum[off + i] + t;
    tilde[off + i] = tilde[off + i] + abs(t);
  }
}

}  // namespace

CharPoly char_poly(std::span<const double> d, std::span<const DoubleDouble> z,
                   const DoubleDouble& alpha) {
  const std::size_t n = d.size() + 1;
  std::vector<Dyadic> dj;
  dj.reserve(d.size());
  for (double v : d) dj.push_back(Dyadic::from_double(v));

  CharPoly out;
  out.coeffs.assign(n + 1, Dyadic());
  out.tilde.assign(n + 1, Dyadic());

  // (x - alpha) * prod_j (x - d_j)
  std::vector<Dyadic> head{Dyadic(1)};
  mul_linear(head, from_pair(alpha));
  for (const auto& r : dj) mul_linear(head, r);
  accumulate(out.coeffs, out.tilde, head, +1);

  // - z_j^2 * prod_{i != j} (x - d_i)
  for (std::size_t j = 0; j < dj.size(); ++j) {
    Dyadic zj = from_pair(z[j]);
    Dyadic zj2 = zj * zj;
    std::vector<Dyadic> p{zj2};
    for (std::size_t i = 0; i < dj.size(); ++i)
      if (i != j) mul_linear(p, dj[i]);
    accumulate(out.coeffs, out.tilde, p, -1);
  }
  return out;
}

}  // namespace arrowroot::exact
