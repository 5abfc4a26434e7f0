#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "arrowroot/double_double.hpp"
#include "arrowroot/polynomial.hpp"

namespace arrowroot {

// Generalized companion matrix of u in symmetric arrowhead form: diagonal d
// (strictly descending, interlacing the roots), arrow column z and tip alpha,
// with z and alpha carried in doubled precision.
struct ArrowheadMatrix {
  Eigen::VectorXd d;
  std::vector<DoubleDouble> z;
  DoubleDouble alpha;
  Polynomial source;     // evaluations and residual checks need u
  std::string strategy;  // how d was chosen

  int order() const { return static_cast<int>(d.size()) + 1; }
};

struct BuildOptions {
  EvalTier eval = EvalTier::double_double;
  // Benchmark escape hatch: replace each weight^2 by its absolute value so
  // the timed pipeline is unchanged even where interlacing cannot hold.
  bool force_positive_weights = false;
};

// z_j = sqrt(-u(d_j) / prod_{i!=j}(d_j - d_i)) and alpha = -a_1 - sum d_j,
// both accumulated in pair arithmetic. The gap product per point is O(n),
// O(n^2) overall. Throws RootHitError when u(d_j) evaluates to exactly zero
// and NotInterlacingError when a weight^2 comes out non-positive.
ArrowheadMatrix build_companion(const Polynomial& u, Eigen::VectorXd d,
                                const BuildOptions& opts = {});

// Amplification factor (|a_1| + sum|d_j|) / |alpha|; +inf when alpha rounds
// to zero.
double k_alpha(const ArrowheadMatrix& m, double a1);
inline double k_alpha(const ArrowheadMatrix& m) {
  return k_alpha(m, m.source.coeff(1));
}

// Exact expansion of det(xI - A) rounded back to a Polynomial, for oracle
// comparison against u. Small orders only (n <= 10).
Polynomial char_poly_check(const ArrowheadMatrix& m);

}  // namespace arrowroot
