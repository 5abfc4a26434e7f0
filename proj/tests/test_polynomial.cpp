#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "arrowroot/errors.hpp"
#include "arrowroot/polynomial.hpp"
#include "arrowroot/solver.hpp"
#include "support.hpp"

using namespace arrowroot;
using exact::Dyadic;

namespace {

constexpr double kEps = 0x1p-53;
constexpr double kEps2 = 0x1p-106;

Polynomial make(std::initializer_list<double> c) {
  return Polynomial(std::span<const double>(c.begin(), c.size()));
}

// |value - exact| <= factor * 2n * eps^2 * utilde(x), all sides dyadic
bool within_eval_bound(const Dyadic& value, const Polynomial& u, double x,
                       double factor) {
  auto cd = testsupport::dyadic_coeffs(u);
  Dyadic dx = Dyadic::from_double(x);
  Dyadic err = exact::abs(value - exact::horner(cd, dx));
  Dyadic bound = Dyadic::from_double(factor * 2 * u.degree() * kEps2) *
                 exact::horner_abs(cd, dx);
  return err <= bound;
}

}  // namespace

TEST_SUITE("polynomial") {

TEST_CASE("construction normalizes to monic and records the scale") {
  Polynomial p = make({2.0, -3.0, 1.0});
  CHECK(p.degree() == 2);
  CHECK(p.coeff(0) == 1.0);
  CHECK(p.coeff(1) == -1.5);
  CHECK(p.coeff(2) == 0.5);
  CHECK(p.scale() == 2.0);

  Polynomial q = make({0.0, 0.0, 1.0, 5.0});  // leading zeros stripped
  CHECK(q.degree() == 1);

  CHECK_THROWS_AS(make({1.0}), InputError);
  CHECK_THROWS_AS(make({0.0, 0.0}), InputError);
  CHECK_THROWS_AS(make({1.0, std::nan("")}), InputError);
}

TEST_CASE("horner: exact values") {
  CHECK(horner(make({1, 0, -1}), 0.0) == -1.0);
  CHECK(horner(make({1, -3, 2}), 1.5) == -0.25);
  Polynomial w18 = generate_wilkinson(18);
  CHECK(horner(w18, 19.0) ==
        exact::BigInt::factorial(18).to_double());  // 18!, all steps exact
}

TEST_CASE("horner_dd: trivial and near-root values") {
  DoubleDouble v = horner_dd(make({1, 0, -1}), 0.0);
  CHECK(v.hi == -1.0);
  CHECK(v.lo == 0.0);

  Polynomial w18 = generate_wilkinson(18);
  CHECK(within_eval_bound(exact::from_pair(horner_dd(w18, 17.5)), w18, 17.5, 1.0));

  // at a representable integer root the pair is zero within the bound
  Polynomial w12 = generate_wilkinson(12);
  DoubleDouble at_root = horner_dd(w12, 5.0);
  CHECK(within_eval_bound(exact::from_pair(at_root), w12, 5.0, 1.0));
  CHECK(exact::horner(testsupport::dyadic_coeffs(w12), Dyadic(5)).is_zero());
}

TEST_CASE("horner_compensated: exact and bounded") {
  auto r1 = horner_compensated(make({1, 0, -1}), 0.0);
  CHECK(r1.h == -1.0);
  CHECK(r1.c == 0.0);
  auto r2 = horner_compensated(make({1, 0, 0, 0}), 2.0);
  CHECK(r2.h == 8.0);
  CHECK(r2.c == 0.0);

  Polynomial w18 = generate_wilkinson(18);
  auto cv = horner_compensated(w18, 8.5);
  Dyadic hc = Dyadic::from_double(cv.h) + Dyadic::from_double(cv.c);
  CHECK(within_eval_bound(hc, w18, 8.5, 2.0));
}

TEST_CASE("horner_dd and horner_compensated track the oracle at random points") {
  std::mt19937_64 rng(0x90ccd);
  std::uniform_real_distribution<double> uc(-4.0, 4.0);
  std::uniform_real_distribution<double> ux(-8.0, 8.0);
  std::uniform_int_distribution<int> udeg(2, 12);
  int points = 0;
  while (points < 1000) {
    int n = udeg(rng);
    std::vector<double> c(n + 1);
    c[0] = 1.0;
    for (int i = 1; i <= n; ++i) c[i] = uc(rng);
    Polynomial u{std::span<const double>(c)};
    double x = ux(rng);
    if (sign(horner_dd(u, x)) == 0) continue;
    ++points;
    CHECK(within_eval_bound(exact::from_pair(horner_dd(u, x)), u, x, 1.0));
    auto cv = horner_compensated(u, x);
    Dyadic hc = Dyadic::from_double(cv.h) + Dyadic::from_double(cv.c);
    CHECK(within_eval_bound(hc, u, x, 2.0));
  }
}

TEST_CASE("cond_at: known values and lower bound") {
  CHECK(cond_at(make({1, 0, -2}), 1.0) == doctest::Approx(3.0));

  Polynomial u = testsupport::spread5();
  CHECK(std::round(cond_at(u, testsupport::kSpread5Points[0])) == 4.0);
  CHECK(cond_at(u, testsupport::kSpread5Points[1]) ==
        doctest::Approx(3.58e16).epsilon(0.02));

  // cond >= 1 - 4 eps wherever u(x) != 0
  std::mt19937_64 rng(0xc0017);
  std::uniform_real_distribution<double> uc(-4.0, 4.0);
  std::uniform_real_distribution<double> ux(-8.0, 8.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> c{1.0, uc(rng), uc(rng), uc(rng)};
    Polynomial u3{std::span<const double>(c)};
    double x = ux(rng);
    double k = cond_at(u3, x);
    if (std::isfinite(k)) CHECK(k >= 1.0 - 4 * kEps);
  }

  // exactly at a representable root the pair value is 0 -> +inf
  CHECK(std::isinf(cond_at(make({1, -3, 2}), 2.0)));
}

TEST_CASE("derivative: exact coefficients, scale recorded") {
  Polynomial d = derivative(make({1, -3, 2}));
  CHECK(d.degree() == 1);
  CHECK(d.coeff(1) == -1.5);
  CHECK(d.scale() == 2.0);

  Polynomial xn = derivative(make({1, 0, 0, 0, 0}));  // x^4 -> x^3
  CHECK(xn.degree() == 3);
  for (int i = 1; i <= 3; ++i) CHECK(xn.coeff(i) == 0.0);

  // W18' against exact big-integer differentiation
  Polynomial w18 = generate_wilkinson(18);
  Polynomial w18d = derivative(w18);
  auto cexact = wilkinson_exact_coefficients(18);
  for (int i = 0; i <= 17; ++i) {
    Dyadic want =
        Dyadic(exact::BigInt(18 - i) * cexact[static_cast<std::size_t>(i)]);
    Dyadic got = Dyadic::from_double(w18d.coeff(i)) * Dyadic(18);
    Dyadic err = exact::abs(got - want);
    CHECK(err <= Dyadic::from_double(2 * kEps) * exact::abs(want));
  }

  CHECK_THROWS_AS(derivative(make({1, 1})), InputError);
}

TEST_CASE("reversed: coefficients flipped and rescaled") {
  Polynomial r = reversed(make({1, -3, 2}));
  CHECK(r.coeff(0) == 1.0);
  CHECK(r.coeff(1) == -1.5);
  CHECK(r.coeff(2) == 0.5);
  CHECK(r.scale() == 2.0);

  CHECK_THROWS_AS(reversed(make({1, 0, -1, 0})), InputError);  // zero root

  // involution up to scale; exact when a_n is a power of two
  Polynomial u = make({1, -3, 2});
  Polynomial rr = reversed(reversed(u));
  for (int i = 0; i <= 2; ++i) CHECK(rr.coeff(i) == u.coeff(i));

  // wide-spread example: reversed coefficients are the originals read
  // backwards, scaled by a_n
  Polynomial s5 = testsupport::spread5();
  Polynomial s5r = reversed(s5);
  double an = s5.coeff(5);
  for (int i = 0; i <= 5; ++i)
    CHECK(s5r.coeff(i) == s5.coeff(5 - i) / an);
}

TEST_CASE("coefficient file format") {
  std::istringstream in(
      "# comment line\n"
      "1\n"
      "  -3.0 \n"
      "\n"
      "0x1p+1\n");
  auto c = read_coefficients(in);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == -3.0);
  CHECK(c[2] == 2.0);

  std::ostringstream out;
  write_coefficients(out, std::span<const double>(c));
  std::istringstream back(out.str());
  CHECK(read_coefficients(back) == c);

  std::istringstream bad("1\nnot-a-number\n");
  CHECK_THROWS_AS(read_coefficients(bad), InputError);
  std::istringstream inf_line("1\ninf\n");
  CHECK_THROWS_AS(read_coefficients(inf_line), InputError);
}

TEST_CASE("evaluate carries tier and cond") {
  Polynomial u = make({1, -3, 2});
  auto r = evaluate(u, 1.5, EvalTier::compensated);
  CHECK(r.tier == EvalTier::compensated);
  CHECK(to_double(r.value) == -0.25);
  CHECK(r.cond == doctest::Approx(horner(make({1, 3, 2}), 1.5) / 0.25));
}

}  // TEST_SUITE
