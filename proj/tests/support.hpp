#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "arrowroot/exact.hpp"
#include "arrowroot/polynomial.hpp"

namespace testsupport {

// Reference degree-5 case: roots span 47 orders of magnitude. The
// coefficients are exact integers, each exactly a binary64 value; 16-digit
// scientific prints of two of them would not round-trip, so fixtures start
// from these.
inline const char* kSpread5Coeffs[] = {
    "1",
    "-20282409603651670423947251286016",
    "713623846352979940529142984724747568191373312",
    "-6277101735386680066937501969125693243111159424202737451008",
    "4181389724724490601097907890741292883247104",
    "-618970019642690000010608640",
};

inline const double kSpread5Points[] = {
    5.277655813324802e+13,
    1.759218604441599e+13,
    6.253878705847983e-16,
    2.627905491153268e-16,
};

inline const double kSpread5Conds[] = {4.0, 3.58e16, 12.4, 46.4};
inline const double kSpread5Kb[] = {1.0, 3.01e15, 3.01e15, 12.6, 12.6};
// first-order entry-error multipliers of the shifted matrices, per root
inline const double kSpread5KappaMatrix[] = {3.6e17, 4.7e2, 4.7e2, 3.58e17,
                                             3.58e17};

inline const double kSpread5Roots[] = {
    2.028240960365167e+31,
    1.759218623050247e+13,
    1.759218585832953e+13,
    4.440892098500624e-16,
    2.220446049250314e-16,
};

inline arrowroot::Polynomial spread5() {
  std::vector<double> c;
  for (const char* s : kSpread5Coeffs)
    c.push_back(arrowroot::exact::BigInt::from_decimal(s).to_double());
  return arrowroot::Polynomial(std::span<const double>(c));
}

inline std::vector<arrowroot::exact::Dyadic> dyadic_coeffs(
    const arrowroot::Polynomial& u) {
  return arrowroot::exact::to_dyadic(std::span<const double>(
      u.coeffs().data(), static_cast<std::size_t>(u.coeffs().size())));
}

inline int ulp_distance(double a, double b) {
  if (a == b) return 0;
  int n = 0;
  double x = a;
  while (x != b && n < 64) {
    x = std::nextafter(x, b);
    ++n;
  }
  return n;
}

// Random monic polynomial with distinct representable real roots. The exact
// product over the chosen roots is rounded to doubles; the instance is kept
// only if exact sign checks at the root midpoints and outer Cauchy bounds
// still show all `degree` real roots. checkpoints[k] and checkpoints[k+1]
// bracket root k (descending).
struct RandomPoly {
  arrowroot::Polynomial u;
  std::vector<double> roots;        // intended, descending
  std::vector<double> checkpoints;  // size degree+1, descending, signs +,-,+,...
};

// expand prod (x - r_i) exactly, round to doubles, and keep the instance
// only if the exact signs at the midpoints and outer bounds still place all
// roots.
inline std::optional<RandomPoly> poly_from_roots(std::vector<double> roots) {
  using arrowroot::exact::Dyadic;
  const int degree = static_cast<int>(roots.size());
  std::sort(roots.begin(), roots.end(), std::greater<>());
  for (int i = 0; i + 1 < degree; ++i) {
    double gap = roots[static_cast<std::size_t>(i)] -
                 roots[static_cast<std::size_t>(i) + 1];
    double scale = std::max(std::fabs(roots[static_cast<std::size_t>(i)]),
                            std::fabs(roots[static_cast<std::size_t>(i) + 1]));
    if (!(gap > 0.05 * scale)) return std::nullopt;
  }

  std::vector<Dyadic> p{Dyadic(arrowroot::exact::BigInt(1))};
  for (double r : roots) {
    p.push_back(Dyadic());
    Dyadic dr = Dyadic::from_double(r);
    for (std::size_t j = p.size() - 1; j > 0; --j)
      p[j] = p[j] - dr * p[j - 1];
  }
  std::vector<double> c;
  c.reserve(p.size());
  for (const auto& d : p) c.push_back(d.to_double());
  if (c[0] != 1.0) return std::nullopt;
  for (double v : c)
    if (!std::isfinite(v)) return std::nullopt;

  arrowroot::Polynomial u{std::span<const double>(c)};
  auto cd = dyadic_coeffs(u);

  double bound = 1.0;
  for (int i = 1; i <= degree; ++i)
    bound = std::max(bound, std::fabs(u.coeff(i)));
  bound += 1.0;

  std::vector<double> checkpoints;
  checkpoints.push_back(bound);
  for (int i = 0; i + 1 < degree; ++i)
    checkpoints.push_back(roots[static_cast<std::size_t>(i)] / 2 +
                          roots[static_cast<std::size_t>(i) + 1] / 2);
  checkpoints.push_back(-bound);

  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    int want = (k % 2 == 0) ? 1 : -1;
    if (arrowroot::exact::horner(cd, Dyadic::from_double(checkpoints[k]))
            .sign() != want)
      return std::nullopt;
    if (k + 1 < checkpoints.size() && !(checkpoints[k] > checkpoints[k + 1]))
      return std::nullopt;
  }
  return RandomPoly{std::move(u), std::move(roots), std::move(checkpoints)};
}

// Unstructured variant: independent magnitudes and signs. Fine for
// construction-level tests; eigenvalue accuracy tests use the clustered
// generator below, which stays inside the solver's problem class.
inline std::optional<RandomPoly> make_random_poly(std::mt19937_64& rng,
                                                  int degree,
                                                  double spread_bits) {
  std::uniform_real_distribution<double> uexp(0.0, spread_bits);
  std::uniform_real_distribution<double> umant(1.0, 2.0);
  std::uniform_int_distribution<int> ubit(0, 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> roots;
    for (int i = 0; i < degree; ++i) {
      double r = umant(rng) * std::exp2(uexp(rng) - spread_bits / 2);
      roots.push_back(ubit(rng) ? r : -r);
    }
    if (auto rp = poly_from_roots(std::move(roots))) return rp;
  }
  return std::nullopt;
}

// Roots of one sign, grouped into scale clusters whose centers are
// log-spread up to spread_bits; only the largest-magnitude cluster may be a
// singleton. This mirrors the solver's intended problem class (uniform
// grids, wide-spread scale clusters): every root gets an interpolation-point
// candidate at its own scale, which the shift-and-invert step needs to reach
// its forward error bound.
inline std::optional<RandomPoly> make_clustered_poly(std::mt19937_64& rng,
                                                     int degree,
                                                     double spread_bits) {
  std::uniform_real_distribution<double> umant(1.0, 2.4);
  std::uniform_real_distribution<double> ufrac(0.0, 1.0);
  std::uniform_int_distribution<int> ubit(0, 1);

  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<int> sizes;
    int remaining = degree;
    while (remaining > 0) {
      int sz;
      if (sizes.empty() && remaining >= 3 && ubit(rng))
        sz = 1;  // singleton only at the top scale
      else
        sz = 2 + static_cast<int>(rng() % 3);
      sz = std::min(sz, remaining);
      if (sz == 1 && !sizes.empty()) sz = remaining >= 2 ? 2 : remaining;
      sizes.push_back(sz);
      remaining -= sz;
    }
    if (sizes.size() > 1 && sizes.back() == 1) continue;

    // descending cluster exponents, separated by at least ~3 bits
    std::vector<double> exps(sizes.size());
    double top = spread_bits;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      exps[i] = top - (i == 0 ? 0.0 : 3.0 + ufrac(rng) * 4.0);
      top = exps[i];
      if (top < 0.0) top = 0.0;
    }

    const double sign = ubit(rng) ? 1.0 : -1.0;
    std::vector<double> roots;
    for (std::size_t i = 0; i < sizes.size(); ++i)
      for (int j = 0; j < sizes[i]; ++j)
        roots.push_back(sign * umant(rng) * std::exp2(exps[i]));
    if (auto rp = poly_from_roots(std::move(roots))) return rp;
  }
  return std::nullopt;
}

}  // namespace testsupport
