#pragma once

#include <vector>

#include "devsurf/curves.hpp"
#include "devsurf/developable.hpp"
#include "devsurf/spline_driver.hpp"

namespace devsurf::detail {

struct TrackOutput {
  Reparameterization reparam;
  std::vector<KnotEvent> events;
};

/// Branch tracking over piece lists of both curves (a Bezier curve is a
/// single piece). Start and end are anchored according to `corners`.
TrackOutput track(const std::vector<BezierSegment>& c, const std::vector<BezierSegment>& d,
                  const CornerReport& corners, const SolveOptions& options);

/// Single-piece T' from the jets of the two pieces; NaN when singular.
double piece_tprime(const RationalBezierCurve& c, const RationalBezierCurve& d, double t, double T,
                    const Tolerances& tol);

}  // namespace devsurf::detail
