#pragma once

#include <Eigen/Core>
#include <utility>

#include "arrowroot/arrowhead.hpp"

namespace arrowroot {

enum class Side { largest, smallest };

// Secular function of a symmetric arrowhead matrix with poles p, squared
// arrow weights w2 and tip t: phi(x) = t - x - sum_j w2_j / (p_j - x).
// Its zeros are the eigenvalues; it is strictly decreasing between poles.
struct SecularFunction {
  Eigen::VectorXd poles;
  Eigen::VectorXd weights2;
  double tip = 0.0;
  double shift = 0.0;  // pole shift applied upstream (0 for A itself)

  double eval(double x) const;  // left-to-right, working precision
  int sign_at(double x) const;  // sign of the computed value; NaN maps to -1
};

SecularFunction secular_of(const ArrowheadMatrix& m);

// Computed secular value of A at lam together with its exact sign.
// Throws PoleError when lam equals a pole.
std::pair<double, int> secular_eval(const ArrowheadMatrix& m, double lam);

// Explicit (A - d_i I)^{-1}: inverted gaps on the diagonal, arrow through
// row/column i with tip b, and weight 1/zeta_i coupling the shifted pole's
// slot to the zero diagonal entry at the far corner.
struct ShiftedInverse {
  int pole_index = 0;        // i, 0-based into d
  double shift = 0.0;        // d_i
  Eigen::VectorXd inv_gaps;  // 1/(d_j - d_i); slot i unused (0)
  Eigen::VectorXd w;         // -zeta_j / ((d_j - d_i) zeta_i); slot i unused
  double b = 0.0;            // arrow tip, re-evaluated in pair arithmetic
                             // and rounded when k_b exceeds the threshold
  double inv_zeta = 0.0;     // 1 / zeta_i
  double k_b = 0.0;
  bool b_escalated = false;
};

struct EigensolverOptions {
  double tau_b = 1e3;  // escalation threshold realizing "K_b >> 1"
};

ShiftedInverse shift_invert(const ArrowheadMatrix& m, int pole_index,
                            const EigensolverOptions& opts = {});

// Extremal eigenvalue nu of the assembled inverse by bisection on its
// secular function over the exterior interval, stopping at relative width
// 4 eps. Throws BracketError when the bracket cannot be established.
double extremal_inverse_eig(const ShiftedInverse& s, Side side,
                            int* iterations = nullptr);

struct RootResult {
  double lambda = 0.0;
  double lambda_tail = 0.0;  // two_sum correction of d_i + 1/nu
  int shift_index = -1;
  Side side = Side::largest;
  double k_b = 0.0;
  bool b_escalated = false;
  double kappa_bound = 0.0;  // a-priori bound on |kappa_lambda|
  double residual = 0.0;     // |u(lambda)| via compensated Horner
  int iterations = 0;
  bool low_confidence = false;  // kappa_bound * eps > 1e-8
  // First-order multiplier on the doubled-precision entry errors of the
  // shifted matrix (filled by solve, which knows the evaluation conditions);
  // the warning fires when kappa_matrix * k_b exceeds 1/eps, meaning even
  // the escalated tip cannot promise full accuracy. Advisory only.
  double kappa_matrix = 0.0;
  bool b_accuracy_limited = false;
};

// k-th eigenvalue (1-based, descending) of an irreducible arrowhead matrix:
// rough localization on phi_A picks the nearest pole, the shifted inverse is
// assembled, and lambda = d_i + 1/nu is recombined with two_sum.
RootResult eigenvalue_k(const ArrowheadMatrix& m, int k,
                        const EigensolverOptions& opts = {});

}  // namespace arrowroot
