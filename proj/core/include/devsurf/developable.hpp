#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "devsurf/config.hpp"
#include "devsurf/curves.hpp"
#include "devsurf/geom.hpp"

namespace devsurf {

struct CornerReport {
  bool coplanar_start = false;
  bool coplanar_end = false;
  double residual_start = 0.0;
  double residual_end = 0.0;
  bool same_side_start = false;
  bool same_side_end = false;

  bool start_ok() const noexcept { return coplanar_start && same_side_start; }
  bool end_ok() const noexcept { return coplanar_end && same_side_end; }
  bool ok() const noexcept { return start_ok() && end_ok(); }
};

/// Corner preconditions on the first/last two control points of each curve.
CornerReport check_corner_conditions(CurveRef c, CurveRef d, const Tolerances& tol = {});

/// T'(t) = det(c'', d_dot, d - c) / det(d_ddot, c', d - c). Throws
/// SingularDenominator when the denominator is below
/// tol.singular_derivative * |d_ddot| |c'| |d - c|.
double reparam_derivative(CurveRef c, CurveRef d, double t, double T, const Tolerances& tol = {});

/// Root of the slice at t nearest to `hint`, searched over the whole
/// T-domain. Throws NoRealRootOnSlice when the slice has no root there.
double nearest_root(const RationalBezierCurve& c, const RationalBezierCurve& d, double t,
                    double hint, const Tolerances& tol = {});

struct Sample {
  double t = 0.0;
  double T = 0.0;
  double Tprime = 0.0;
  std::size_t c_piece = 0;
  std::size_t d_piece = 0;
  /// false when the slice had no root in the T-domain (T and Tprime are NaN).
  bool solved = true;
  /// true when T' could not be evaluated (Tprime is NaN).
  bool singular = false;
};

enum class RegressionCause : std::uint8_t {
  NonMonotone = 1,
  SingularDerivative = 2,
  NoRealRoot = 4,
};

constexpr std::uint8_t operator|(std::uint8_t a, RegressionCause b) noexcept {
  return static_cast<std::uint8_t>(a | static_cast<std::uint8_t>(b));
}
constexpr bool has_cause(std::uint8_t set, RegressionCause c) noexcept {
  return (set & static_cast<std::uint8_t>(c)) != 0;
}
/// "non-monotone", "singular-derivative", "no-real-root", joined by '|'.
std::string cause_string(std::uint8_t causes);

struct RegressionInterval {
  /// Padded to the neighbouring good samples, so (t_start, T_start) and
  /// (t_end, T_end) are rulings of the surrounding patch.
  double t_start = 0.0;
  double t_end = 0.0;
  double T_start = 0.0;
  double T_end = 0.0;
  std::uint8_t causes = 0;
  /// false when the interval runs into a domain end with no good sample.
  bool bounded = true;
};

struct RegressionReport {
  std::vector<RegressionInterval> intervals;
  bool empty() const noexcept { return intervals.empty(); }
};

/// A place where the tracked branch turns back: the branch followed so far
/// ceases to exist at t_end and the branch taken over begins at t_start.
struct FoldEvent {
  double t_start = 0.0;
  double t_end = 0.0;
  /// Old branch at t_start and new branch at t_end.
  double T_start = 0.0;
  double T_end = 0.0;
  /// First sample on the new branch.
  std::size_t sample_index = 0;
};

struct Reparameterization {
  std::vector<Sample> samples;
  bool monotone = true;
  /// Sample indices whose T does not continue the branch of the previous one.
  std::vector<std::size_t> branch_jumps;
  std::vector<FoldEvent> folds;
  Interval t_domain;
  Interval T_domain;
  bool anchored_start = false;
  bool anchored_end = false;
  /// Curves coplanar: every T is a root and T(t) is the affine map between
  /// the domains.
  bool identically_zero = false;
};

struct SolveResult {
  Reparameterization reparam;
  RegressionReport regression;
  CornerReport corners;
};

/// Uniform-grid solve of p(t_i, T_i) = 0 with predictor/corrector branch
/// tracking. Throws InvalidArgument when the corners fail and
/// options.allow_invalid_corners is false, or when n_samples < 2.
SolveResult solve_reparameterization(const RationalBezierCurve& c, const RationalBezierCurve& d,
                                     const SolveOptions& options = {});

/// Maximal runs of bad samples (no root, singular T', T' < 0, decreasing T),
/// folds and branch jumps, padded to the neighbouring good samples.
RegressionReport detect_regression(const Reparameterization& r, const Tolerances& tol = {});

struct Ruling {
  double t = 0.0;
  double T = 0.0;
  Vec3 from;
  Vec3 to;
  /// |det(c', d_dot, d - c)| / (|c'| |d_dot| |d - c|).
  double residual = 0.0;
  /// |N0 x N1| / (|N0| |N1|) for the surface normals at the two ends.
  double normal_defect = 0.0;
};

struct QuadMesh {
  std::vector<Vec3> vertices;
  /// Zero-based vertex indices, counter-clockwise in (t, v).
  std::vector<std::array<std::size_t, 4>> quads;
};

struct RuledSurface {
  std::vector<Ruling> rulings;
  QuadMesh mesh;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double max_normal_defect = 0.0;
};

/// Normalized residual and normal-parallelism defect of the ruling
/// c(t) -> d(T). Throws DegenerateRuling for a zero-length ruling.
Ruling make_ruling(CurveRef c, CurveRef d, double t, double T, const Tolerances& tol = {});

/// T at arbitrary t from the samples: cubic Hermite on the bracketing pair,
/// then Newton on det(c', d_dot, d - c) in T. Throws NoRealRootOnSlice when a
/// bracketing sample is unsolved.
double interpolate_T(CurveRef c, CurveRef d, const Reparameterization& r, double t,
                     const Tolerances& tol = {});

/// b(t, v) = (1 - v) c(t) + v d(T(t)) on n_rulings uniform t values and
/// n_across uniform v values. When n_rulings equals the sample count the
/// samples are used as they are. Throws InvalidArgument for fewer than 2
/// rulings, fewer than 2 vertices across or fewer than 2 samples.
RuledSurface build_ruled_surface(CurveRef c, CurveRef d, const Reparameterization& r,
                                 std::size_t n_rulings, std::size_t n_across,
                                 const SolveOptions& options = {});

struct CurvatureSigns {
  double t = 0.0;
  int c_sign = 0;
  int d_sign = 0;
  /// false for unsolved samples.
  bool valid = true;
  bool agree() const noexcept { return c_sign == d_sign; }
};

/// sgn(c''(t) . nu) and sgn(d_ddot(T) . nu) with nu the unit normal of the
/// ruling's tangent plane, per sample. Throws DegenerateNormal when nu is
/// undefined at a solved sample.
std::vector<CurvatureSigns> normal_curvature_signs(CurveRef c, CurveRef d,
                                                   const Reparameterization& r,
                                                   const Tolerances& tol = {});

}  // namespace devsurf
