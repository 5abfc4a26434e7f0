#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <span>
#include <vector>

#include "arrowroot/double_double.hpp"

namespace arrowroot {

// Monic real polynomial, coefficients in descending powers (coeff(0) == 1).
// Non-monic input is normalized on construction; the original leading
// coefficient is kept as scale(). Degree is at least 1.
class Polynomial {
 public:
  explicit Polynomial(Eigen::VectorXd coeffs);
  explicit Polynomial(std::span<const double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double coeff(int i) const { return coeffs_[i]; }  // a_i, a_0 == 1
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  double scale() const { return scale_; }

 private:
  Eigen::VectorXd coeffs_;
  double scale_ = 1.0;
};

enum class EvalTier { standard, compensated, double_double };

struct EvalResult {
  DoubleDouble value;
  double cond = 0.0;  // utilde(x) / |u(x)|
  EvalTier tier = EvalTier::standard;
};

// Horner evaluation generic over the accumulation scalar.
template <class T>
T horner_at(const Polynomial& u, const T& x) {
  T acc(u.coeff(0));
  for (int i = 1; i <= u.degree(); ++i) acc = acc * x + T(u.coeff(i));
  return acc;
}

// Working-precision Horner.
double horner(const Polynomial& u, double x);

// Horner with every operation carried out on pairs; relative error bounded by
// cond(u,x) * 2n * eps^2.
DoubleDouble horner_dd(const Polynomial& u, double x);

// Compensated Horner: h + c approximates u(x) as if computed in doubled
// precision. Both parts are returned; callers that continue in pair
// arithmetic renormalize them into a DoubleDouble.
struct CompensatedValue {
  double h = 0.0;
  double c = 0.0;
  DoubleDouble pair() const { return two_sum(h, c); }
};
CompensatedValue horner_compensated(const Polynomial& u, double x);

// utilde(x)/|u(x)| with utilde evaluated in working precision (all terms
// nonnegative) and |u(x)| from horner_dd. Returns +inf when the pair value
// rounds to zero, i.e. x is indistinguishable from a root at this precision.
double cond_at(const Polynomial& u, double x);

EvalResult evaluate(const Polynomial& u, double x,
                    EvalTier tier = EvalTier::double_double);

// Coefficient-wise exact derivative, renormalized monic (scale records the
// factor n). Requires degree >= 2.
Polynomial derivative(const Polynomial& u);

// x^n * u(1/x): coefficients reversed, then normalized monic (scale records
// a_n). Requires a_n != 0; a zero root must be deflated by the caller first.
Polynomial reversed(const Polynomial& u);

// Coefficient text format shared with the CLI: one coefficient per line,
// descending powers, decimal or hexfloat; lines starting with '#' and blank
// lines are ignored.
std::vector<double> read_coefficients(std::istream& in);
void write_coefficients(std::ostream& out, std::span<const double> coeffs);
Polynomial read_polynomial(std::istream& in);

}  // namespace arrowroot
