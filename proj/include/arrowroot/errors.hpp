#pragma once

#include <stdexcept>
#include <string>

namespace arrowroot {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: unreadable coefficients, degree < 1, repeated zero root, ...
struct InputError : Error {
  using Error::Error;
};

// -u(d_j)/v'(d_j) <= 0 for some j: the supplied points do not interlace the
// roots, so the companion matrix would be complex.
struct NotInterlacingError : Error {
  int index;     // offending point (0-based into the sorted d)
  double point;
  double ratio;  // the non-positive weight^2
  NotInterlacingError(int j, double dj, double r)
      : Error("interlacing violated at point index " + std::to_string(j) +
              " (d = " + std::to_string(dj) + ")"),
        index(j), point(dj), ratio(r) {}
};

// u(d_j) evaluated to exactly zero in doubled precision: d_j is a root.
struct RootHitError : Error {
  int index;
  double point;
  RootHitError(int j, double dj)
      : Error("interpolation point index " + std::to_string(j) +
              " is a representable root (d = " + std::to_string(dj) + ")"),
        index(j), point(dj) {}
};

// Every point-selection strategy failed; message carries per-strategy detail.
struct StrategyError : Error {
  using Error::Error;
};

// Bisection bracket lost its sign change; indicates broken interlacing upstream.
struct BracketError : Error {
  using Error::Error;
};

// Secular function evaluated exactly at one of its poles.
struct PoleError : Error {
  using Error::Error;
};

}  // namespace arrowroot
