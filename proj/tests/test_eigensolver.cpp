#include <doctest.h>

#include <cmath>
#include <random>

#include "arrowroot/eigensolver.hpp"
#include "arrowroot/errors.hpp"
#include "arrowroot/solver.hpp"
#include "support.hpp"

using namespace arrowroot;
using exact::Dyadic;

namespace {

constexpr double kEps = 0x1p-53;

Polynomial make(std::initializer_list<double> c) {
  return Polynomial(std::span<const double>(c.begin(), c.size()));
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d[i++] = x;
  return d;
}

struct Instance {
  ArrowheadMatrix m;
  std::vector<double> checkpoints;
};

// random clustered instance, using the solver's own point selection
std::optional<Instance> random_instance(std::mt19937_64& rng, int degree,
                                        double spread_bits) {
  auto rp = testsupport::make_clustered_poly(rng, degree, spread_bits);
  if (!rp) return std::nullopt;
  std::vector<double> d;
  try {
    d = select_points(rp->u).points;
  } catch (const Error&) {
    return std::nullopt;
  }
  ArrowheadMatrix m = build_companion(
      rp->u, Eigen::Map<const Eigen::VectorXd>(
                 d.data(), static_cast<Eigen::Index>(d.size())));
  return Instance{std::move(m), std::move(rp->checkpoints)};
}

}  // namespace

TEST_SUITE("eigensolver") {

TEST_CASE("secular evaluation on the 2x2 symmetric case") {
  ArrowheadMatrix m = build_companion(make({1, 0, -1}), vec({0.0}));
  auto [value, sgn] = secular_eval(m, 2.0);
  CHECK(value == doctest::Approx(-1.5));
  CHECK(sgn == -1);

  CHECK_THROWS_AS(secular_eval(m, 0.0), PoleError);

  // approaching the pole: -inf from below, +inf from above (weights > 0)
  double below = std::nextafter(0.0, -1.0);
  double above = std::nextafter(0.0, 1.0);
  CHECK(secular_eval(m, below).second == -1);
  CHECK(secular_eval(m, above).second == 1);

  // at a known eigenvalue the value is zero to rounding
  ArrowheadMatrix m2 = build_companion(make({1, -3, 2}), vec({1.5}));
  auto [v2, s2] = secular_eval(m2, 2.0);
  CHECK(std::fabs(v2) <= 2 * 2 * kEps * 3.0);
  (void)s2;
}

TEST_CASE("shift_invert: 2x2 exact entries") {
  ArrowheadMatrix m = build_companion(make({1, -3, 2}), vec({1.5}));
  ShiftedInverse s = shift_invert(m, 0);
  CHECK(s.shift == 1.5);
  CHECK(s.b == 0.0);
  CHECK(s.inv_zeta == 2.0);
  // alpha - d = 0 makes k_b blow up; escalation keeps b exact
  CHECK(s.b_escalated);

  double nu_hi = extremal_inverse_eig(s, Side::largest);
  double nu_lo = extremal_inverse_eig(s, Side::smallest);
  CHECK(nu_hi == doctest::Approx(2.0).epsilon(4 * kEps));
  CHECK(nu_lo == doctest::Approx(-2.0).epsilon(4 * kEps));
}

TEST_CASE("eigenvalue_k: closed-form 2x2 cases") {
  ArrowheadMatrix sym = build_companion(make({1, 0, -1}), vec({0.0}));
  CHECK(eigenvalue_k(sym, 1).lambda == 1.0);
  CHECK(eigenvalue_k(sym, 2).lambda == -1.0);

  ArrowheadMatrix m = build_companion(make({1, -3, 2}), vec({1.5}));
  RootResult r1 = eigenvalue_k(m, 1);
  RootResult r2 = eigenvalue_k(m, 2);
  CHECK(r1.lambda == 2.0);
  CHECK(r2.lambda == 1.0);
  CHECK(r1.side == Side::largest);
  CHECK(r2.side == Side::smallest);
  CHECK(r1.residual == 0.0);
}

TEST_CASE("eigenvalue_k: 3x3 against the characteristic polynomial") {
  // (x-1)(x-2)(x-4) = x^3 - 7x^2 + 14x - 8
  ArrowheadMatrix m = build_companion(make({1, -7, 14, -8}), vec({3.0, 1.5}));
  CHECK(eigenvalue_k(m, 1).lambda == doctest::Approx(4.0).epsilon(4 * kEps));
  CHECK(eigenvalue_k(m, 2).lambda == doctest::Approx(2.0).epsilon(4 * kEps));
  CHECK(eigenvalue_k(m, 3).lambda == doctest::Approx(1.0).epsilon(4 * kEps));
}

TEST_CASE("wilkinson-18: every root exact at working precision") {
  Polynomial w18 = generate_wilkinson(18);
  for (const char* strategy : {"derivative", "reciprocal"}) {
    auto sel = select_points(
        w18, {strategy[0] == 'd' ? Strategy::derivative : Strategy::reciprocal,
              1e6});
    ArrowheadMatrix m = build_companion(
        w18, Eigen::Map<const Eigen::VectorXd>(
                 sel.points.data(),
                 static_cast<Eigen::Index>(sel.points.size())));
    for (int k = 1; k <= 18; ++k) {
      RootResult r = eigenvalue_k(m, k);
      CHECK(r.lambda == static_cast<double>(19 - k));
    }
  }
}

TEST_CASE("wilkinson-18 reciprocal route: no escalation at default tau") {
  Polynomial w18 = generate_wilkinson(18);
  auto sel = select_points(w18, {Strategy::reciprocal, 1e6});
  ArrowheadMatrix m = build_companion(
      w18, Eigen::Map<const Eigen::VectorXd>(
               sel.points.data(), static_cast<Eigen::Index>(sel.points.size())));
  double max_kb = 0.0;
  for (int k = 1; k <= 18; ++k) {
    RootResult r = eigenvalue_k(m, k);
    CHECK_FALSE(r.b_escalated);
    max_kb = std::max(max_kb, r.k_b);
  }
  CHECK(max_kb >= 50.0);
  CHECK(max_kb <= 1e3);
}

TEST_CASE("wide-spread case with the reference interpolation points") {
  Polynomial u = testsupport::spread5();
  Eigen::VectorXd d(4);
  for (int i = 0; i < 4; ++i) d[i] = testsupport::kSpread5Points[i];
  ArrowheadMatrix m = build_companion(u, d);

  RootResult r2 = eigenvalue_k(m, 2);
  CHECK(r2.b_escalated);
  CHECK(r2.k_b >= testsupport::kSpread5Kb[1] / 2);
  CHECK(r2.k_b <= testsupport::kSpread5Kb[1] * 2);

  for (int k = 1; k <= 5; ++k) {
    RootResult r = eigenvalue_k(m, k);
    CHECK(testsupport::ulp_distance(
              r.lambda, testsupport::kSpread5Roots[k - 1]) <= 1);
    CHECK(r.b_escalated == (r.k_b > 1e3));
  }
}

TEST_CASE("invariants over random instances") {
  std::mt19937_64 rng(0x1e1e);
  int built = 0;
  while (built < 40) {
    int degree = 3 + static_cast<int>(rng() % 8);
    auto inst = random_instance(rng, degree, 12.0);
    if (!inst) continue;
    ++built;
    const ArrowheadMatrix& m = inst->m;
    const int n = m.order();

    std::vector<RootResult> roots;
    for (int k = 1; k <= n; ++k) roots.push_back(eigenvalue_k(m, k));

    auto cd = testsupport::dyadic_coeffs(m.source);
    for (int k = 1; k <= n; ++k) {
      const RootResult& r = roots[static_cast<std::size_t>(k - 1)];

      // strict interlacing with sentinels
      if (k <= n - 1) CHECK(r.lambda > m.d[k - 1]);
      if (k >= 2) CHECK(r.lambda < m.d[k - 2]);

      // monotone descending
      if (k >= 2) CHECK(roots[static_cast<std::size_t>(k - 2)].lambda > r.lambda);

      // the chosen shift is the nearest pole (ties to rounding allowed)
      double dist = std::fabs(r.lambda - m.d[r.shift_index]);
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < m.d.size(); ++j)
        best = std::min(best, std::fabs(r.lambda - m.d[j]));
      CHECK(dist <= best * (1.0 + 4 * kEps));

      // residual bound: |u(l)| <= utilde(l) * (kappa_bound + 4n) * eps
      Dyadic utilde =
          exact::horner_abs(cd, Dyadic::from_double(r.lambda));
      Dyadic bound =
          Dyadic::from_double((r.kappa_bound + 4.0 * n) * kEps) * utilde;
      CHECK(Dyadic::from_double(r.residual) <= bound);
    }
  }
}

TEST_CASE("escalation consistency: forcing doubled-precision b is benign") {
  std::mt19937_64 rng(0xe5ca);
  int built = 0;
  while (built < 20) {
    int degree = 3 + static_cast<int>(rng() % 6);
    auto inst = random_instance(rng, degree, 10.0);
    if (!inst) continue;
    ++built;
    const int n = inst->m.order();
    EigensolverOptions always_escalate{-1.0};  // k_b > -1 always
    for (int k = 1; k <= n; ++k) {
      RootResult a = eigenvalue_k(inst->m, k);
      RootResult b = eigenvalue_k(inst->m, k, always_escalate);
      CHECK(b.b_escalated);
      double tol = a.kappa_bound * kEps * std::fabs(a.lambda);
      CHECK(std::fabs(a.lambda - b.lambda) <= tol);
    }
  }
}

TEST_CASE("bad pole index is rejected") {
  ArrowheadMatrix m = build_companion(make({1, -3, 2}), vec({1.5}));
  CHECK_THROWS_AS(shift_invert(m, 1), InputError);
  CHECK_THROWS_AS(shift_invert(m, -1), InputError);
  CHECK_THROWS_AS(eigenvalue_k(m, 0), InputError);
  CHECK_THROWS_AS(eigenvalue_k(m, 3), InputError);
}

}  // TEST_SUITE
