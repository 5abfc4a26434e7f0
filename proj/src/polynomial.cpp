#include "arrowroot/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "arrowroot/errors.hpp"

namespace arrowroot {

namespace {

Eigen::VectorXd normalize_monic(Eigen::VectorXd c, double& scale) {
  int lead = 0;
  while (lead < c.size() && c[lead] == 0.0) ++lead;
  if (c.size() - lead < 2)
    throw InputError("polynomial: degree must be at least 1");
  if (lead > 0) c = c.tail(c.size() - lead).eval();
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (!std::isfinite(c[i]))
      throw InputError("polynomial: non-finite coefficient");
  scale = c[0];
  if (scale != 1.0) c /= scale;
  c[0] = 1.0;
  return c;
}

}  // namespace

Polynomial::Polynomial(Eigen::VectorXd coeffs) {
  coeffs_ = normalize_monic(std::move(coeffs), scale_);
}

Polynomial::Polynomial(std::span<const double> coeffs)
    : Polynomial(Eigen::Map<const Eigen::VectorXd>(
          coeffs.data(), static_cast<Eigen::Index>(coeffs.size()))) {}

double horner(const Polynomial& u, double x) { return horner_at<double>(u, x); }

DoubleDouble horner_dd(const Polynomial& u, double x) {
  return horner_at<DoubleDouble>(u, DoubleDouble(x));
}

CompensatedValue horner_compensated(const Polynomial& u, double x) {
  double s = u.coeff(0);
  double c = 0.0;
  for (int i = 1; i <= u.degree(); ++i) {
    DoubleDouble p = two_prod(s, x);
    DoubleDouble t = two_sum(p.hi, u.coeff(i));
    s = t.hi;
    c = c * x + (p.lo + t.lo);
  }
  return {s, c};
}

double cond_at(const Polynomial& u, double x) {
  double ax = std::fabs(x);
  double utilde = std::fabs(u.coeff(0));
  for (int i = 1; i <= u.degree(); ++i)
    utilde = utilde * ax + std::fabs(u.coeff(i));
  double denom = std::fabs(to_double(horner_dd(u, x)));
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return utilde / denom;
}

EvalResult evaluate(const Polynomial& u, double x, EvalTier tier) {
  EvalResult r;
  r.tier = tier;
  switch (tier) {
    case EvalTier::standard:
      r.value = DoubleDouble(horner(u, x));
      break;
    case EvalTier::compensated:
      r.value = horner_compensated(u, x).pair();
      break;
    case EvalTier::double_double:
      r.value = horner_dd(u, x);
      break;
  }
  r.cond = cond_at(u, x);
  return r;
}

Polynomial derivative(const Polynomial& u) {
  if (u.degree() < 2)
    throw InputError("derivative: degree must be at least 2");
  Eigen::VectorXd d(u.degree());
  for (int i = 0; i < u.degree(); ++i)
    d[i] = u.coeff(i) * static_cast<double>(u.degree() - i);
  return Polynomial(std::move(d));
}

Polynomial reversed(const Polynomial& u) {
  if (u.coeff(u.degree()) == 0.0)
    throw InputError("reversed: polynomial has a zero root; deflate it first");
  Eigen::VectorXd r = u.coeffs().reverse();
  return Polynomial(std::move(r));
}

std::vector<double> read_coefficients(std::istream& in) {
  std::vector<double> coeffs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw InputError("coefficient file: cannot parse line " +
                       std::to_string(lineno) + ": '" + tok + "'");
    if (!std::isfinite(v))
      throw InputError("coefficient file: non-finite value at line " +
                       std::to_string(lineno));
    coeffs.push_back(v);
  }
  return coeffs;
}

void write_coefficients(std::ostream& out, std::span<const double> coeffs) {
  char buf[64];
  for (double c : coeffs) {
    // integers print exactly as integers, everything else round-trips
    if (c == std::floor(c) && std::fabs(c) < 9.2e18) {
      std::snprintf(buf, sizeof buf, "%.0f", c);
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", c);
    }
    out << buf << "\n";
  }
}

Polynomial read_polynomial(std::istream& in) {
  auto coeffs = read_coefficients(in);
  if (coeffs.size() < 2)
    throw InputError("coefficient file: need at least two coefficients");
  return Polynomial(std::span<const double>(coeffs));
}

}  // namespace arrowroot
