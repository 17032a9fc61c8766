#pragma once

#include <cstddef>

namespace devsurf {

/// Numerical thresholds used across the library. Every value is relative to
/// the magnitude of the data it is compared against, so rescaled inputs
/// behave identically.
struct Tolerances {
  /// Minimum |cos| between a line direction and a plane normal.
  double parallel_cosine = 1e-10;
  /// Normalized triple product below which corner vertices count as coplanar.
  double coplanar = 1e-8;
  /// Polynomial coefficients below this fraction of the largest are zero.
  double coefficient_trim = 1e-12;
  /// Root refinement tolerance, relative to max(1, |root|).
  double root = 1e-12;
  /// Roots closer than this are merged into one (flagged) root.
  double root_cluster = 1e-8;
  /// Lengths below this fraction of the model scale are degenerate.
  double degenerate_length = 1e-12;
  /// |v x a| / (|v||a|) below this means no osculating plane.
  double osculating = 1e-10;
  /// Relative size of the denominator of T' below which T' is singular.
  double singular_derivative = 1e-12;
  /// Knot event localization, relative to the master domain length.
  double event = 1e-10;
};

/// Options shared by the single-piece and spline solvers.
struct SolveOptions {
  std::size_t n_samples = 201;
  bool allow_invalid_corners = false;
  /// Worker threads for independent slice solves; 0 picks the hardware count.
  unsigned threads = 0;
  Tolerances tol{};
};

}  // namespace devsurf
