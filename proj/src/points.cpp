#include "arrowroot/points.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "arrowroot/errors.hpp"

namespace arrowroot {

namespace {

// Parlett-Reinsch balancing with radix 2 (exact scalings).
void balance(Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::fabs(A(j, i));
        r += std::fabs(A(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / 2.0, f = 1.0, s = c + r;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
}

// Value and derivative of the monic polynomial in one Horner pass.
void horner_with_derivative(const Polynomial& p, double x, double& v,
                            double& dv) {
  v = p.coeff(0);
  dv = 0.0;
  for (int i = 1; i <= p.degree(); ++i) {
    dv = dv * x + v;
    v = v * x + p.coeff(i);
  }
}

void newton_polish(const Polynomial& p, double& r) {
  for (int step = 0; step < 3; ++step) {
    double v, dv;
    horner_with_derivative(p, r, v, dv);
    if (v == 0.0 || dv == 0.0) return;
    double r2 = r - v / dv;
    double v2 = horner(p, r2);
    if (!(std::fabs(v2) < std::fabs(v))) return;
    r = r2;
  }
}

// Fujiwara-style upper bound on root magnitudes: 2 max |a_i|^(1/i).
double root_magnitude_bound(const Polynomial& u) {
  double b = 0.0;
  for (int i = 1; i <= u.degree(); ++i) {
    double t = std::pow(std::fabs(u.coeff(i)), 1.0 / i);
    b = std::max(b, t);
  }
  return 2.0 * b;
}

// Lower bound on root magnitudes via the reversed polynomial; 0 when unknown.
double root_magnitude_lower_bound(const Polynomial& u) {
  if (u.coeff(u.degree()) == 0.0) return 0.0;
  double ub = root_magnitude_bound(reversed(u));
  if (!(ub > 0.0) || !std::isfinite(ub)) return 0.0;
  return 1.0 / ub;
}

// The shifted-inverse recombination d_i + 1/nu loses relative accuracy for a
// root that is much smaller in magnitude than every pole. Accept a point set
// outright only if some pole reaches down to the smallest possible root
// scale; the constant absorbs the looseness of the magnitude bounds.
bool scale_matched(const Polynomial& u, std::span<const double> d) {
  double mhat = root_magnitude_lower_bound(u);
  if (!(mhat > 0.0)) return true;
  double dmin = std::numeric_limits<double>::infinity();
  for (double x : d) dmin = std::min(dmin, std::fabs(x));
  return dmin <= 8.0 * u.degree() * mhat;
}

int expected_sign(std::size_t j) { return (j % 2 == 0) ? -1 : 1; }

}  // namespace

std::vector<double> seed_real_roots(const Polynomial& p) {
  const int n = p.degree();
  std::vector<double> roots;
  if (n == 1) {
    roots.push_back(-p.coeff(1));
    return roots;
  }
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) C(0, j) = -p.coeff(j + 1);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  balance(C);
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw StrategyError("seed_real_roots: companion QR did not converge");
  const auto& ev = es.eigenvalues();
  roots.reserve(n);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i].imag() != 0.0)
      throw StrategyError(
          "seed_real_roots: computed roots contain a complex conjugate pair");
    double r = ev[i].real();
    newton_polish(p, r);
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

std::vector<double> points_from_derivative(const Polynomial& u) {
  return seed_real_roots(derivative(u));
}

std::vector<double> points_from_reversed(const Polynomial& u) {
  Polynomial rev = reversed(u);  // InputError if u has a zero root
  std::vector<double> r = seed_real_roots(derivative(rev));
  for (double& x : r) {
    if (x == 0.0)
      throw StrategyError("points_from_reversed: zero seed root has no reciprocal");
    x = 1.0 / x;
  }
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

InterlacingReport interlacing_check(const Polynomial& u,
                                    std::span<const double> d) {
  InterlacingReport rep;
  rep.points.reserve(d.size());
  bool ok = d.size() == static_cast<std::size_t>(u.degree()) - 1;
  for (std::size_t j = 0; j < d.size(); ++j) {
    PointCheck pc;
    pc.point = d[j];
    pc.expected = expected_sign(j);
    DoubleDouble v = horner_dd(u, d[j]);
    pc.value = to_double(v);
    pc.sign = sign(v);
    pc.ok = pc.sign == pc.expected;
    if (j > 0 && !(d[j - 1] > d[j])) pc.ok = false;
    ok = ok && pc.ok;
    rep.points.push_back(pc);
  }
  rep.ok = ok && !d.empty();
  return rep;
}

bool nudge_root_hits(const Polynomial& u, std::vector<double>& d) {
  bool moved = false;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (sign(horner_dd(u, d[j])) != 0) continue;
    int want = expected_sign(j);
    // preferred direction: toward the midpoint of the neighboring points
    double inward = j + 1 < d.size() ? d[j + 1] : (j > 0 ? d[j - 1] : d[j] - 1.0);
    double dirs[2] = {inward < d[j] ? -std::numeric_limits<double>::infinity()
                                    : std::numeric_limits<double>::infinity(),
                      inward < d[j] ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity()};
    bool fixed = false;
    for (double dir : dirs) {
      double x = d[j];
      for (int step = 0; step < 4 && !fixed; ++step) {
        x = std::nextafter(x, dir);
        if (sign(horner_dd(u, x)) == want) {
          d[j] = x;
          fixed = true;
          moved = true;
        }
      }
      if (fixed) break;
    }
  }
  return moved;
}

namespace {

// Merged-list fallback: walk all candidates in descending order and keep
// each one carrying the next expected sign of u.
std::vector<double> combine_candidates(const Polynomial& u,
                                       std::span<const double> a,
                                       std::span<const double> b) {
  std::vector<double> cand(a.begin(), a.end());
  cand.insert(cand.end(), b.begin(), b.end());
  std::sort(cand.begin(), cand.end(), std::greater<>());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<double> picked;
  const std::size_t need = static_cast<std::size_t>(u.degree()) - 1;
  int want = -1;
  for (double x : cand) {
    if (picked.size() == need) break;
    if (sign(horner_dd(u, x)) == want) {
      picked.push_back(x);
      want = -want;
    }
  }
  return picked;
}

}  // namespace

PointSelection select_points(const Polynomial& u, const PointOptions& opts) {
  std::string detail;

  auto attempt = [&](Strategy s,
                     std::vector<double>* cache) -> std::vector<double>* {
    const char* name = s == Strategy::derivative ? "derivative" : "reciprocal";
    try {
      *cache = s == Strategy::derivative ? points_from_derivative(u)
                                         : points_from_reversed(u);
      return cache;
    } catch (const Error& e) {
      detail += std::string("\n  ") + name + ": " + e.what();
      return nullptr;
    }
  };

  auto validate = [&](std::vector<double> pts, const char* name,
                      bool guard) -> std::optional<PointSelection> {
    nudge_root_hits(u, pts);
    auto rep = interlacing_check(u, pts);
    if (!rep.ok) {
      int bad = 0;
      for (const auto& pc : rep.points) bad += pc.ok ? 0 : 1;
      detail += std::string("\n  ") + name + ": interlacing check failed at " +
                std::to_string(bad) + " of " +
                std::to_string(rep.points.size()) + " points";
      return std::nullopt;
    }
    if (guard && !scale_matched(u, pts)) {
      detail += std::string("\n  ") + name +
                ": no pole near the smallest root scale";
      return std::nullopt;
    }
    return PointSelection{std::move(pts), name};
  };

  // An explicit strategy is tried alone; auto orders the two routes by the
  // estimated root-magnitude spread, falls back to the merged candidate
  // list, and only then drops the scale-matching guard.
  std::vector<Strategy> order;
  if (opts.strategy == Strategy::automatic) {
    double ub = root_magnitude_bound(u);
    double mhat = root_magnitude_lower_bound(u);
    double spread = mhat > 0.0 ? ub / mhat
                               : std::numeric_limits<double>::infinity();
    if (spread > opts.spread_threshold)
      order = {Strategy::reciprocal, Strategy::derivative};
    else
      order = {Strategy::derivative, Strategy::reciprocal};
  } else {
    order = {opts.strategy};
  }

  std::vector<double> der_pts, rec_pts;
  std::vector<std::pair<std::vector<double>*, const char*>> computed;
  for (Strategy s : order) {
    auto* cache = s == Strategy::derivative ? &der_pts : &rec_pts;
    if (!attempt(s, cache)) continue;
    const char* name = s == Strategy::derivative ? "derivative" : "reciprocal";
    computed.emplace_back(cache, name);
  }

  const bool auto_mode = opts.strategy == Strategy::automatic;
  for (auto [pts, name] : computed)
    if (auto sel = validate(*pts, name, auto_mode)) return *sel;

  if (auto_mode && !computed.empty()) {
    std::vector<double> merged = combine_candidates(u, der_pts, rec_pts);
    if (merged.size() == static_cast<std::size_t>(u.degree()) - 1) {
      if (auto sel = validate(std::move(merged), "combined", true)) return *sel;
    } else {
      detail += "\n  combined: only " + std::to_string(merged.size()) +
                " of " + std::to_string(u.degree() - 1) +
                " slots could be filled";
    }
    // the guard is advisory: a set that interlaces is still usable
    for (auto [pts, name] : computed)
      if (auto sel = validate(*pts, name, false)) return *sel;
    std::vector<double> merged2 = combine_candidates(u, der_pts, rec_pts);
    if (merged2.size() == static_cast<std::size_t>(u.degree()) - 1)
      if (auto sel = validate(std::move(merged2), "combined", false))
        return *sel;
  }

  throw StrategyError("no interpolation point strategy succeeded:" + detail);
}

}  // namespace arrowroot
