#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arrowroot/eigensolver.hpp"
#include "arrowroot/exact.hpp"
#include "arrowroot/points.hpp"

namespace arrowroot {

struct SolveOptions {
  Strategy strategy = Strategy::automatic;
  std::optional<std::vector<double>> points;  // bypass strategy selection
  double tau_b = 1e3;
  EvalTier eval = EvalTier::double_double;
  int threads = 1;
  double spread_threshold = 1e6;
  bool verify = false;       // cross-check roots against the exact oracle
  unsigned verify_bits = 100;
};

struct DPoint {
  double value = 0.0;
  double cond = 0.0;
};

struct Timings {
  double points_seconds = 0.0;
  double build_seconds = 0.0;
  double roots_seconds = 0.0;
};

struct VerifySummary {
  unsigned bits = 0;
  double max_rel_deviation = 0.0;
};

struct SolveReport {
  int degree = 0;
  std::vector<RootResult> roots;  // descending
  std::vector<DPoint> d_points;
  std::string strategy_used;
  double k_alpha = 0.0;
  double max_cond = 0.0;
  double max_k_b = 0.0;
  int escalation_count = 0;
  // advisory condition flags: evaluation conditioning or the alpha
  // amplification left the regime where the error bounds are tight
  bool cond_flagged = false;     // max_cond > 1/eps
  bool k_alpha_flagged = false;  // k_alpha > 1/eps
  Timings timings;
  std::optional<VerifySummary> verify;
};

// End to end: pick interpolation points, build the companion arrowhead
// matrix, compute every eigenvalue independently. Degree 1 short-circuits to
// -a_1 and a single exact zero root is deflated up front and re-inserted in
// order. O(n^2) arithmetic overall.
SolveReport solve(const Polynomial& u, const SolveOptions& opts = {});

// prod_{i=1..n} (x - i), expanded exactly. Every coefficient is verified to
// be exactly representable at working precision; n is capped at 20.
Polynomial generate_wilkinson(int n);
std::vector<exact::BigInt> wilkinson_exact_coefficients(int n);

struct BenchRow {
  int n = 0;
  double build_seconds = 0.0;
  double roots_seconds = 0.0;
  double total() const { return build_seconds + roots_seconds; }
};

// Timing harness over synthetic even-degree polynomials with log-spread
// root pairs and analytic interlacing points; reports the best of `reps`
// runs for the build and per-root phases.
std::vector<BenchRow> bench(std::span<const int> sizes, int reps = 3);

}  // namespace arrowroot
