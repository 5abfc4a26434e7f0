#include "arrowroot/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "arrowroot/errors.hpp"

namespace arrowroot {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

RootResult zero_root_result() {
  RootResult r;
  r.lambda = 0.0;
  r.shift_index = -1;
  r.k_b = 0.0;
  r.kappa_bound = 0.0;
  r.residual = 0.0;
  return r;
}

RootResult linear_root_result(const Polynomial& v) {
  RootResult r;
  r.lambda = -v.coeff(1);  // exact negation
  r.shift_index = -1;
  r.k_b = 0.0;
  r.kappa_bound = 1.0;
  r.residual = std::fabs(to_double(horner_compensated(v, r.lambda).pair()));
  return r;
}

// Per-root phase, optionally on a bounded worker pool; results land in a
// k-indexed array so the output order never depends on scheduling.
std::vector<RootResult> all_eigenvalues(const ArrowheadMatrix& A,
                                        const EigensolverOptions& aopts,
                                        int threads) {
  const int n = A.order();
  std::vector<RootResult> roots(n);
  if (threads <= 1 || n < 4) {
    for (int k = 1; k <= n; ++k) roots[k - 1] = eigenvalue_k(A, k, aopts);
    return roots;
  }
  threads = std::min(threads, n);
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int k = t + 1; k <= n; k += threads)
          roots[k - 1] = eigenvalue_k(A, k, aopts);
      } catch (...) {
        std::scoped_lock lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return roots;
}

VerifySummary verify_against_oracle(const Polynomial& v,
                                    std::span<const double> d,
                                    std::span<const RootResult> roots,
                                    unsigned bits) {
  VerifySummary vs;
  vs.bits = bits;
  auto cd = exact::to_dyadic(
      std::span<const double>(v.coeffs().data(),
                              static_cast<std::size_t>(v.coeffs().size())));
  double bound = 1.0;
  for (int i = 1; i <= v.degree(); ++i)
    bound = std::max(bound, std::fabs(v.coeff(i)));
  bound += 1.0;  // Cauchy: no root beyond 1 + max|a_i|

  const int n = v.degree();
  for (int k = 1; k <= n; ++k) {
    double lo = k <= n - 1 ? d[k - 1] : -bound;
    double hi = k >= 2 ? d[k - 2] : bound;
    double dev = std::numeric_limits<double>::infinity();
    try {
      auto enc = exact::bisect_root(cd, exact::Dyadic::from_double(lo),
                                    exact::Dyadic::from_double(hi), bits);
      exact::Dyadic mid = enc.midpoint();
      exact::Dyadic err =
          exact::abs(exact::Dyadic::from_double(roots[k - 1].lambda) - mid);
      double denom = std::fabs(mid.to_double());
      dev = denom == 0.0 ? err.to_double() : err.to_double() / denom;
    } catch (const BracketError&) {
      // leave dev = inf; the caller sees the failure in the maximum
    }
    vs.max_rel_deviation = std::max(vs.max_rel_deviation, dev);
  }
  return vs;
}

}  // namespace

SolveReport solve(const Polynomial& u, const SolveOptions& opts) {
  SolveReport rep;
  rep.degree = u.degree();

  // Deflate an exact zero root before strategy selection.
  Eigen::VectorXd c = u.coeffs();
  int zeros = 0;
  while (c.size() >= 2 && c[c.size() - 1] == 0.0) {
    c.conservativeResize(c.size() - 1);
    ++zeros;
  }
  if (zeros >= 2)
    throw InputError(
        "solve: repeated zero root; polynomials with multiple roots are out "
        "of scope");

  std::vector<RootResult> roots;
  if (c.size() == 1) {
    // input was exactly x
    roots.push_back(zero_root_result());
    rep.roots = std::move(roots);
    rep.strategy_used = "none";
    rep.k_alpha = 1.0;
    return rep;
  }

  Polynomial v{std::move(c)};

  if (v.degree() == 1) {
    roots.push_back(linear_root_result(v));
    rep.strategy_used = "none";
    rep.k_alpha = 1.0;
  } else {
    auto t0 = Clock::now();
    std::vector<double> pts;
    if (opts.points) {
      pts = *opts.points;
      std::sort(pts.begin(), pts.end(), std::greater<>());
      rep.strategy_used = "points-file";
    } else {
      PointSelection sel =
          select_points(v, {opts.strategy, opts.spread_threshold});
      pts = std::move(sel.points);
      rep.strategy_used = sel.strategy_used;
    }
    rep.timings.points_seconds = seconds_since(t0);

    t0 = Clock::now();
    BuildOptions bopts;
    bopts.eval = opts.eval;
    ArrowheadMatrix A = [&] {
      for (int attempt = 0;; ++attempt) {
        try {
          return build_companion(
              v, Eigen::Map<const Eigen::VectorXd>(
                     pts.data(), static_cast<Eigen::Index>(pts.size())),
              bopts);
        } catch (const RootHitError&) {
          if (attempt >= 3 || !nudge_root_hits(v, pts)) throw;
        }
      }
    }();
    A.strategy = rep.strategy_used;
    rep.timings.build_seconds = seconds_since(t0);

    rep.d_points.reserve(pts.size());
    for (double p : pts) rep.d_points.push_back({p, cond_at(v, p)});
    rep.k_alpha = k_alpha(A);

    t0 = Clock::now();
    EigensolverOptions aopts{opts.tau_b};
    roots = all_eigenvalues(A, aopts, opts.threads);
    rep.timings.roots_seconds = seconds_since(t0);

    if (opts.verify)
      rep.verify = verify_against_oracle(v, pts, roots, opts.verify_bits);
  }

  // Re-insert the deflated zero root in descending position.
  if (zeros == 1) {
    auto pos = std::find_if(roots.begin(), roots.end(),
                            [](const RootResult& r) { return r.lambda < 0.0; });
    roots.insert(pos, zero_root_result());
  }
  rep.roots = std::move(roots);

  for (const auto& dp : rep.d_points)
    rep.max_cond = std::max(rep.max_cond, dp.cond);
  for (const auto& r : rep.roots) {
    rep.max_k_b = std::max(rep.max_k_b, r.k_b);
    rep.escalation_count += r.b_escalated ? 1 : 0;
  }

  // Advisory condition diagnostics. kappa_matrix is the first-order bound on
  // the doubled-precision entry errors of the shifted matrix each root used:
  // max(2 max_{j != i} (n cond_j + (n+1)/2), k_alpha (n-1)). When its product
  // with K_b passes 1/eps, even the escalated tip may fall short of full
  // accuracy; reported, never fatal.
  constexpr double kEpsInv = 0x1p53;
  const int n = rep.degree - zeros;  // order of the system actually solved
  rep.cond_flagged = rep.max_cond > kEpsInv;
  rep.k_alpha_flagged = rep.k_alpha > kEpsInv;
  for (auto& r : rep.roots) {
    if (r.shift_index < 0) continue;
    double zeta_err = 0.0;
    for (std::size_t j = 0; j < rep.d_points.size(); ++j) {
      if (static_cast<int>(j) == r.shift_index) continue;
      zeta_err = std::max(zeta_err,
                          n * rep.d_points[j].cond + (n + 1) / 2.0);
    }
    r.kappa_matrix = std::max(2.0 * zeta_err, rep.k_alpha * (n - 1));
    r.b_accuracy_limited = r.kappa_matrix * r.k_b > kEpsInv;
  }
  return rep;
}

std::vector<exact::BigInt> wilkinson_exact_coefficients(int n) {
  if (n < 1 || n > 20)
    throw InputError("wilkinson: order must be between 1 and 20");
  std::vector<exact::BigInt> c{exact::BigInt(1)};
  for (int i = 1; i <= n; ++i) {
    // multiply by (x - i)
    c.push_back(exact::BigInt(0));
    for (std::size_t j = c.size() - 1; j > 0; --j)
      c[j] = c[j] - exact::BigInt(i) * c[j - 1];
  }
  return c;
}

Polynomial generate_wilkinson(int n) {
  auto exact_coeffs = wilkinson_exact_coefficients(n);
  Eigen::VectorXd c(static_cast<Eigen::Index>(exact_coeffs.size()));
  for (std::size_t i = 0; i < exact_coeffs.size(); ++i) {
    double d = exact_coeffs[i].to_double();
    if (exact::Dyadic::from_double(d) != exact::Dyadic(exact_coeffs[i]))
      throw InputError("wilkinson: coefficient of order " + std::to_string(n) +
                       " is not exactly representable at working precision");
    c[static_cast<Eigen::Index>(i)] = d;
  }
  return Polynomial(std::move(c));
}

std::vector<BenchRow> bench(std::span<const int> sizes, int reps) {
  std::vector<BenchRow> rows;
  rows.reserve(sizes.size());
  for (int n : sizes) {
    if (n < 4 || n % 2 != 0)
      throw InputError("bench: sizes must be even and at least 4");
    const int m = n / 2;

    // Root pairs +-sqrt(mu_i) with mu_i log-spread over [2^-3, 2^3]; the
    // spread keeps every coefficient and evaluation in double range.
    std::vector<double> e(m);
    for (int i = 0; i < m; ++i)
      e[i] = 3.0 - 6.0 * static_cast<double>(i) / (m - 1);

    std::vector<double> q{1.0};  // q(y) = prod (y - mu_i)
    for (int i = 0; i < m; ++i) {
      double mu = std::exp2(e[i]);
      q.push_back(0.0);
      for (std::size_t j = q.size() - 1; j > 0; --j) q[j] -= mu * q[j - 1];
    }
    Eigen::VectorXd uc = Eigen::VectorXd::Zero(2 * m + 1);
    for (int i = 0; i <= m; ++i) uc[2 * i] = q[static_cast<std::size_t>(i)];
    Polynomial u(std::move(uc));

    // Analytic interlacing points: geometric midpoints of adjacent root
    // magnitudes, zero in the middle, mirrored for the negative half.
    Eigen::VectorXd d(n - 1);
    for (int i = 0; i < m - 1; ++i)
      d[i] = std::exp2((e[i] / 2 + e[i + 1] / 2) / 2);
    d[m - 1] = 0.0;
    for (int i = 0; i < m - 1; ++i) d[m + i] = -d[m - 2 - i];

    BuildOptions bopts;
    bopts.force_positive_weights = true;

    BenchRow row;
    row.n = n;
    row.build_seconds = std::numeric_limits<double>::infinity();
    row.roots_seconds = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < std::max(reps, 1); ++rep) {
      auto t0 = Clock::now();
      ArrowheadMatrix A = build_companion(u, d, bopts);
      row.build_seconds = std::min(row.build_seconds, seconds_since(t0));

      t0 = Clock::now();
      EigensolverOptions aopts;
      for (int k = 1; k <= n; ++k) (void)eigenvalue_k(A, k, aopts);
      row.roots_seconds = std::min(row.roots_seconds, seconds_since(t0));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace arrowroot
