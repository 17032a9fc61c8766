#pragma once

#include <cstddef>
#include <vector>

#include "devsurf/config.hpp"
#include "devsurf/curves.hpp"
#include "devsurf/developable.hpp"

namespace devsurf {

enum class KnotOwner { C, D, Both };

const char* to_string(KnotOwner owner) noexcept;

/// The tracked branch crossed a knot of c (at t), of d (at T), or both.
struct KnotEvent {
  double t = 0.0;
  double T = 0.0;
  KnotOwner owner = KnotOwner::C;
  /// Piece pair in use before and after the event.
  std::size_t c_before = 0;
  std::size_t d_before = 0;
  std::size_t c_after = 0;
  std::size_t d_after = 0;
};

struct PiecewiseSegment {
  Interval t_interval;
  std::size_t c_piece = 0;
  std::size_t d_piece = 0;
  /// Grid samples inside the segment, bracketed by the segment's end points.
  Reparameterization reparam;
};

struct PiecewiseReparameterization {
  std::vector<PiecewiseSegment> segments;
  std::vector<KnotEvent> events;
  /// Full clamped knot vectors with the crossing parameters inserted.
  std::vector<double> refined_knots_c;
  std::vector<double> refined_knots_d;
  /// All grid samples in one sequence; events are not duplicated into it.
  Reparameterization flattened;
  RegressionReport regression;
  CornerReport corners;
};

/// Tracks T(t) across the pieces of both splines, switching the c piece at
/// its knots and the d piece when T crosses one of d's knots. Throws
/// InvalidArgument when the corners fail and options.allow_invalid_corners
/// is false, EventLocalizationFailure when the branch oscillates across a
/// knot.
PiecewiseReparameterization solve_spline(const NurbsCurve& c, const NurbsCurve& d,
                                         const SolveOptions& options = {});

struct EventContinuity {
  KnotEvent event;
  double T_left = 0.0;
  double T_right = 0.0;
  double Tprime_left = 0.0;
  double Tprime_right = 0.0;
  double delta_T() const noexcept;
  double delta_Tprime() const noexcept;
};

/// Left/right values of T and T' at every event, each from the piece pair
/// in use on that side.
std::vector<EventContinuity> continuity_report(const PiecewiseReparameterization& p,
                                               const NurbsCurve& c, const NurbsCurve& d,
                                               const Tolerances& tol = {});

}  // namespace devsurf
