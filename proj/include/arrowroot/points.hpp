#pragma once

#include <span>
#include <string>
#include <vector>

#include "arrowroot/polynomial.hpp"

namespace arrowroot {

enum class Strategy { derivative, reciprocal, automatic };

struct PointCheck {
  double point = 0.0;
  double value = 0.0;  // u(point) rounded from the pair evaluation
  int sign = 0;
  int expected = 0;
  bool ok = false;
};

struct InterlacingReport {
  bool ok = false;
  std::vector<PointCheck> points;
};

// True iff d is strictly descending and sign(u(d_j)) follows the strict
// alternation a monic polynomial with interlaced points must show
// (negative at the largest point). Uses the pair-precision evaluation.
InterlacingReport interlacing_check(const Polynomial& u,
                                    std::span<const double> d);

// Roots of u', seed quality only, sorted descending.
std::vector<double> points_from_derivative(const Polynomial& u);

// Reciprocals of the roots of reversed(u)', sorted descending.
std::vector<double> points_from_reversed(const Polynomial& u);

struct PointOptions {
  Strategy strategy = Strategy::automatic;
  double spread_threshold = 1e6;  // heuristic switch to the reciprocal route
};

struct PointSelection {
  std::vector<double> points;
  std::string strategy_used;  // "derivative", "reciprocal" or "combined"
};

// Tries the strategies in a spread-driven order (auto) or the requested one,
// validating with interlacing_check; auto falls back to a merged candidate
// list that greedily keeps points matching the expected sign alternation.
// Throws StrategyError with per-strategy detail when nothing works.
PointSelection select_points(const Polynomial& u, const PointOptions& opts = {});

// Points that evaluate to exactly zero sit on a representable root; move
// them by a few ulps until the expected sign appears. Returns true if any
// point moved.
bool nudge_root_hits(const Polynomial& u, std::vector<double>& d);

// Eigenvalues of the balanced companion matrix, Newton-polished; throws
// StrategyError when a complex conjugate pair shows up.
std::vector<double> seed_real_roots(const Polynomial& p);

}  // namespace arrowroot
