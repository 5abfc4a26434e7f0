#include "arrowroot/eigensolver.hpp"

#include <cmath>
#include <limits>

#include "arrowroot/errors.hpp"

namespace arrowroot {

namespace {

constexpr double kEps = 0x1p-53;
constexpr double kSqrtEps = 0x1.6a09e667f3bcdp-27;  // 2^-26.5
// mantissa bits + full exponent range, doubled
constexpr int kIterCap = 2 * (53 + 2098);

double upper_gershgorin(const Eigen::VectorXd& poles,
                        const Eigen::VectorXd& absw, double tip) {
  double ub = tip + absw.sum();
  for (Eigen::Index j = 0; j < poles.size(); ++j)
    ub = std::max(ub, poles[j] + absw[j]);
  if (!std::isfinite(ub)) ub = std::numeric_limits<double>::max() / 4;
  return ub;
}

double lower_gershgorin(const Eigen::VectorXd& poles,
                        const Eigen::VectorXd& absw, double tip) {
  double lb = tip - absw.sum();
  for (Eigen::Index j = 0; j < poles.size(); ++j)
    lb = std::min(lb, poles[j] - absw[j]);
  if (!std::isfinite(lb)) lb = -std::numeric_limits<double>::max() / 4;
  return lb;
}

// Bisection for the unique zero in (lo, hi), where the secular function is
// positive at lo+ and negative at hi- (it is strictly decreasing between
// poles). rel_width 4 eps runs to full precision; ~sqrt(eps) is the rough
// localization used only to pick the nearest pole.
double bisect(const SecularFunction& f, double lo, double hi, double rel_width,
              int* iterations) {
  int iter = 0;
  while (iter < kIterCap) {
    double width = hi - lo;
    double scale = std::max(std::fabs(lo), std::fabs(hi));
    if (!(width > rel_width * scale)) break;
    double mid = lo + width / 2;
    if (!(mid > lo) || !(mid < hi)) break;
    ++iter;
    int s = f.sign_at(mid);
    if (s == 0) {
      lo = hi = mid;
      break;
    }
    if (s > 0)
      lo = mid;
    else
      hi = mid;
  }
  if (iterations) *iterations += iter;
  return lo + (hi - lo) / 2;
}

struct InverseSecular {
  SecularFunction f;
  Eigen::VectorXd absw;
};

InverseSecular inverse_secular(const ShiftedInverse& s) {
  const Eigen::Index m = s.inv_gaps.size();  // n - 1 entries, slot i unused
  InverseSecular r;
  r.f.poles.resize(m);
  r.f.weights2.resize(m);
  r.absw.resize(m);
  Eigen::Index out = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (j == s.pole_index) continue;
    r.f.poles[out] = s.inv_gaps[j];
    r.f.weights2[out] = s.w[j] * s.w[j];
    r.absw[out] = std::fabs(s.w[j]);
    ++out;
  }
  r.f.poles[out] = 0.0;  // the zero diagonal entry at the far corner
  r.f.weights2[out] = s.inv_zeta * s.inv_zeta;
  r.absw[out] = std::fabs(s.inv_zeta);
  r.f.tip = s.b;
  r.f.shift = s.shift;
  return r;
}

}  // namespace

double SecularFunction::eval(double x) const {
  double v = tip - x;
  for (Eigen::Index j = 0; j < poles.size(); ++j)
    v -= weights2[j] / (poles[j] - x);
  return v;
}

int SecularFunction::sign_at(double x) const {
  double v = eval(x);
  if (std::isnan(v)) return -1;
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

SecularFunction secular_of(const ArrowheadMatrix& m) {
  SecularFunction f;
  f.poles = m.d;
  f.weights2.resize(m.d.size());
  for (Eigen::Index j = 0; j < m.d.size(); ++j) {
    double zj = to_double(m.z[j]);
    f.weights2[j] = zj * zj;
  }
  f.tip = to_double(m.alpha);
  f.shift = 0.0;
  return f;
}

std::pair<double, int> secular_eval(const ArrowheadMatrix& m, double lam) {
  for (Eigen::Index j = 0; j < m.d.size(); ++j)
    if (m.d[j] == lam)
      throw PoleError("secular_eval: evaluation exactly at pole " +
                      std::to_string(j));
  SecularFunction f = secular_of(m);
  double v = f.eval(lam);
  return {v, f.sign_at(lam)};
}

ShiftedInverse shift_invert(const ArrowheadMatrix& m, int pole_index,
                            const EigensolverOptions& opts) {
  const Eigen::Index cnt = m.d.size();
  if (pole_index < 0 || pole_index >= cnt)
    throw InputError("shift_invert: pole index out of range");

  ShiftedInverse s;
  s.pole_index = pole_index;
  s.shift = m.d[pole_index];
  s.inv_gaps.setZero(cnt);
  s.w.setZero(cnt);

  const double zi = to_double(m.z[pole_index]);
  const double alpha_std = to_double(m.alpha);
  const double a = alpha_std - s.shift;

  double sum1 = 0.0, sum2 = 0.0;  // z1' D1^-1 z1 and z2' D2^-1 z2
  for (Eigen::Index j = 0; j < cnt; ++j) {
    if (j == pole_index) continue;
    double gap = m.d[j] - s.shift;
    s.inv_gaps[j] = 1.0 / gap;
    double zj = to_double(m.z[j]);
    s.w[j] = -zj / (gap * zi);
    (j < pole_index ? sum1 : sum2) += (zj * zj) / gap;
  }
  s.inv_zeta = 1.0 / zi;

  const double denom_std = -a + sum1 + sum2;
  s.b = denom_std / (zi * zi);

  // k_b's numerator is cancellation-free; the denominator is re-accumulated
  // in pair arithmetic so the reported factor stays meaningful when large.
  DoubleDouble denom_dd = DoubleDouble(s.shift) - m.alpha;
  for (Eigen::Index j = 0; j < cnt; ++j) {
    if (j == pole_index) continue;
    DoubleDouble gap = two_sum(m.d[j], -s.shift);
    denom_dd += (m.z[j] * m.z[j]) / gap;
  }
  double num = std::fabs(alpha_std) + std::fabs(s.shift) + std::fabs(sum1) +
               std::fabs(sum2);
  double dmag = std::fabs(to_double(denom_dd));
  s.k_b = dmag == 0.0 ? std::numeric_limits<double>::infinity() : num / dmag;

  if (s.k_b > opts.tau_b) {
    DoubleDouble b_dd = denom_dd / (m.z[pole_index] * m.z[pole_index]);
    s.b = to_double(b_dd);
    s.b_escalated = true;
  }
  return s;
}

double extremal_inverse_eig(const ShiftedInverse& s, Side side,
                            int* iterations) {
  InverseSecular inv = inverse_secular(s);
  const auto& f = inv.f;

  double pmax = f.poles.maxCoeff();
  double pmin = f.poles.minCoeff();

  double lo, hi;
  if (side == Side::largest) {
    lo = pmax;
    hi = upper_gershgorin(f.poles, inv.absw, f.tip);
    if (!(hi > lo)) hi = lo + std::max(std::fabs(lo), 1.0) * kEps;
    for (int tries = 0; f.sign_at(hi) >= 0; ++tries) {
      if (tries > 200 || !std::isfinite(hi))
        throw BracketError("extremal_inverse_eig: no sign change above poles");
      hi = lo + 2.0 * (hi - lo);
    }
  } else {
    hi = pmin;
    lo = lower_gershgorin(f.poles, inv.absw, f.tip);
    if (!(lo < hi)) lo = hi - std::max(std::fabs(hi), 1.0) * kEps;
    for (int tries = 0; f.sign_at(lo) <= 0; ++tries) {
      if (tries > 200 || !std::isfinite(lo))
        throw BracketError("extremal_inverse_eig: no sign change below poles");
      lo = hi - 2.0 * (hi - lo);
    }
  }
  return bisect(f, lo, hi, 4.0 * kEps, iterations);
}

RootResult eigenvalue_k(const ArrowheadMatrix& m, int k,
                        const EigensolverOptions& opts) {
  const int n = m.order();
  if (k < 1 || k > n) throw InputError("eigenvalue_k: k out of range");

  int iters = 0;
  int pole = -1;

  if (k == 1) {
    pole = 0;  // only the outermost pole borders the top interval
  } else if (k == n) {
    pole = n - 2;
  } else {
    // Rough localization inside (d_k, d_{k-1}) picks the nearer endpoint.
    SecularFunction phi = secular_of(m);
    double lo = m.d[k - 1], hi = m.d[k - 2];
    double lam_rough = bisect(phi, lo, hi, kSqrtEps, &iters);
    double dl = lam_rough - m.d[k - 1];
    double dr = m.d[k - 2] - lam_rough;
    if (dl < dr) {
      pole = k - 1;
    } else if (dr < dl) {
      pole = k - 2;
    } else {  // tie: the larger weight gives the tamer inverse entries
      double zl = std::fabs(to_double(m.z[k - 1]));
      double zr = std::fabs(to_double(m.z[k - 2]));
      pole = zl >= zr ? k - 1 : k - 2;
    }
  }

  auto run = [&](int i) {
    RootResult r;
    ShiftedInverse s = shift_invert(m, i, opts);
    Side side = (i == k - 1) ? Side::largest : Side::smallest;
    double nu = extremal_inverse_eig(s, side, &iters);
    DoubleDouble lam = two_sum(m.d[i], 1.0 / nu);
    r.lambda = lam.hi;
    r.lambda_tail = lam.lo;
    r.shift_index = i;
    r.side = side;
    r.k_b = s.k_b;
    r.b_escalated = s.b_escalated;
    return r;
  };

  RootResult r = run(pole);

  // Self-correction: with lambda now known accurately, redo once if the
  // other endpoint pole is strictly nearer.
  if (k > 1 && k < n) {
    double dl = r.lambda - m.d[k - 1];
    double dr = m.d[k - 2] - r.lambda;
    int nearest = dl < dr ? k - 1 : (dr < dl ? k - 2 : pole);
    if (nearest != pole) r = run(nearest);
  }

  // Interlacing sanity: lambda must not escape its interval.
  double left = k <= n - 1 ? m.d[k - 1] : -std::numeric_limits<double>::infinity();
  double right = k >= 2 ? m.d[k - 2] : std::numeric_limits<double>::infinity();
  if (r.lambda < left || r.lambda > right)
    throw BracketError("eigenvalue_k: computed eigenvalue escaped its interval");

  const double rn = std::sqrt(static_cast<double>(n));
  r.kappa_bound =
      r.b_escalated
          ? (6.0 * n + 21.0) * rn + 3.18 * n * (rn + 1.0) + 4.0
          : 3.0 * rn * ((3.0 * n + 6.0) * r.k_b + 2.0 * n + 7.0) +
                3.18 * n * (rn + 1.0) + 4.0;
  r.low_confidence = r.kappa_bound * kEps > 1e-8;

  CompensatedValue cv = horner_compensated(m.source, r.lambda);
  r.residual = std::fabs(to_double(cv.pair()));
  r.iterations = iters;
  return r;
}

}  // namespace arrowroot
