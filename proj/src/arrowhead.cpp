#include "arrowroot/arrowhead.hpp"

#include <cmath>
#include <utility>

#include "arrowroot/errors.hpp"
#include "arrowroot/exact.hpp"

namespace arrowroot {

namespace {

DoubleDouble eval_tiered(const Polynomial& u, double x, EvalTier tier) {
  switch (tier) {
    case EvalTier::compensated:
      return horner_compensated(u, x).pair();
    case EvalTier::standard:  // never used by the solver; kept total
      return DoubleDouble(horner(u, x));
    case EvalTier::double_double:
    default:
      return horner_dd(u, x);
  }
}

constexpr double kScaleHigh = 0x1p500;
constexpr double kScaleLow = 0x1p-500;

}  // namespace

ArrowheadMatrix build_companion(const Polynomial& u, Eigen::VectorXd d,
                                const BuildOptions& opts) {
  const int n = u.degree();
  if (d.size() != n - 1)
    throw InputError("build_companion: need degree-1 interpolation points");
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i]))
      throw InputError("build_companion: non-finite interpolation point");
    if (i > 0 && !(d[i - 1] > d[i]))
      throw InputError(
          "build_companion: points must be strictly descending and distinct");
  }

  ArrowheadMatrix m{std::move(d), {}, DoubleDouble(), u, ""};
  m.z.resize(m.d.size());

  for (int j = 0; j < static_cast<int>(m.z.size()); ++j) {
    DoubleDouble s = eval_tiered(u, m.d[j], opts.eval);
    if (sign(s) == 0) throw RootHitError(j, m.d[j]);

    // v'(d_j) = prod_{i != j} (d_j - d_i) as pair * 2^pexp; the exponent is
    // tracked separately so high degrees cannot overflow the product.
    DoubleDouble prod(1.0);
    std::int64_t pexp = 0;
    for (Eigen::Index i = 0; i < m.d.size(); ++i) {
      if (i == j) continue;
      prod = prod * two_sum(m.d[j], -m.d[i]);  // exact difference
      double mag = std::fabs(prod.hi);
      if (mag > kScaleHigh) {
        prod = ldexp(prod, -512);
        pexp += 512;
      } else if (mag < kScaleLow && mag != 0.0) {
        prod = ldexp(prod, 512);
        pexp -= 512;
      }
    }

    DoubleDouble ratio = (-s) / prod;  // true weight^2 = ratio * 2^-pexp
    if (opts.force_positive_weights) ratio = abs(ratio);
    if (sign(ratio) <= 0)
      throw NotInterlacingError(j, m.d[j], to_double(ratio));

    std::int64_t t = -pexp;
    if (t & 1) {
      ratio = ldexp(ratio, 1);
      t -= 1;
    }
    DoubleDouble zeta = ldexp(sqrt(ratio), static_cast<int>(t / 2));
    if (sign(zeta) == 0 || !isfinite(zeta))
      throw Error("build_companion: weight outside double range");
    m.z[j] = zeta;
  }

  DoubleDouble acc(-u.coeff(1));
  for (Eigen::Index j = 0; j < m.d.size(); ++j)
    acc = acc - DoubleDouble(m.d[j]);
  m.alpha = acc;
  return m;
}

double k_alpha(const ArrowheadMatrix& m, double a1) {
  double num = std::fabs(a1);
  for (Eigen::Index j = 0; j < m.d.size(); ++j) num += std::fabs(m.d[j]);
  double denom = std::fabs(to_double(m.alpha));
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return num / denom;
}

Polynomial char_poly_check(const ArrowheadMatrix& m) {
  if (m.order() > 10)
    throw InputError("char_poly_check: exact expansion limited to n <= 10");
  auto cp = exact::char_poly(
      std::span<const double>(m.d.data(), static_cast<std::size_t>(m.d.size())),
      m.z, m.alpha);
  Eigen::VectorXd c(cp.coeffs.size());
  for (std::size_t i = 0; i < cp.coeffs.size(); ++i)
    c[static_cast<Eigen::Index>(i)] = cp.coeffs[i].to_double();
  return Polynomial(std::move(c));
}

}  // namespace arrowroot
