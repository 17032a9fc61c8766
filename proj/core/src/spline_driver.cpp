#include "devsurf/spline_driver.hpp"

#include <algorithm>
#include <cmath>

#include "devsurf/errors.hpp"
#include "tracking.hpp"

namespace devsurf {

const char* to_string(KnotOwner owner) noexcept {
  switch (owner) {
    case KnotOwner::C: return "c";
    case KnotOwner::D: return "d";
    case KnotOwner::Both: return "both";
  }
  return "?";
}

double EventContinuity::delta_T() const noexcept { return std::abs(T_left - T_right); }
double EventContinuity::delta_Tprime() const noexcept {
  return std::abs(Tprime_left - Tprime_right);
}

namespace {

Sample boundary_sample(const NurbsCurve& c, const NurbsCurve& d, double t, double T,
                       std::size_t i, std::size_t j, const Tolerances& tol) {
  Sample s;
  s.t = t;
  s.T = T;
  s.c_piece = i;
  s.d_piece = j;
  s.Tprime = detail::piece_tprime(c.segments()[i].curve, d.segments()[j].curve, t, T, tol);
  s.singular = !std::isfinite(s.Tprime);
  return s;
}

std::vector<double> with_inserted(std::span<const double> knots, std::vector<double> extra) {
  std::vector<double> out(knots.begin(), knots.end());
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PiecewiseReparameterization solve_spline(const NurbsCurve& c, const NurbsCurve& d,
                                         const SolveOptions& options) {
  PiecewiseReparameterization out;
  out.corners = check_corner_conditions(c, d, options.tol);
  if (!out.corners.ok() && !options.allow_invalid_corners)
    throw Error(ErrorCode::InvalidArgument, "corner conditions fail; set allow_invalid_corners");

  detail::TrackOutput tracked = detail::track(c.segments(), d.segments(), out.corners, options);
  out.flattened = std::move(tracked.reparam);
  out.events = std::move(tracked.events);
  out.regression = detect_regression(out.flattened, options.tol);
  out.flattened.monotone = out.regression.empty();

  std::vector<double> extra_c;
  std::vector<double> extra_d;
  for (const KnotEvent& e : out.events) {
    if (e.owner == KnotOwner::D) extra_c.push_back(e.t);
    if (e.owner == KnotOwner::C) extra_d.push_back(e.T);
  }
  out.refined_knots_c = with_inserted(c.knots(), std::move(extra_c));
  out.refined_knots_d = with_inserted(d.knots(), std::move(extra_d));

  const auto& samples = out.flattened.samples;
  const Interval dom = out.flattened.t_domain;
  std::size_t ci = samples.front().c_piece;
  std::size_t dj = samples.front().d_piece;
  double t0 = dom.lo;
  std::size_t next_sample = 0;
  bool start_from_event = false;
  double T0 = samples.front().T;
  for (std::size_t e = 0; e <= out.events.size(); ++e) {
    const bool last = e == out.events.size();
    const double t1 = last ? dom.hi : out.events[e].t;
    PiecewiseSegment seg;
    seg.t_interval = {t0, t1};
    seg.c_piece = ci;
    seg.d_piece = dj;
    seg.reparam.t_domain = seg.t_interval;
    seg.reparam.T_domain = out.flattened.T_domain;
    seg.reparam.identically_zero = out.flattened.identically_zero;
    if (start_from_event)
      seg.reparam.samples.push_back(boundary_sample(c, d, t0, T0, ci, dj, options.tol));
    while (next_sample < samples.size() && (samples[next_sample].t < t1 || last)) {
      seg.reparam.samples.push_back(samples[next_sample]);
      ++next_sample;
    }
    if (!last) {
      const KnotEvent& ev = out.events[e];
      seg.reparam.samples.push_back(
          boundary_sample(c, d, ev.t, ev.T, ev.c_before, ev.d_before, options.tol));
      ci = ev.c_after;
      dj = ev.d_after;
      t0 = ev.t;
      T0 = ev.T;
      start_from_event = true;
    }
    seg.reparam.monotone = detect_regression(seg.reparam, options.tol).empty();
    out.segments.push_back(std::move(seg));
  }
  return out;
}

std::vector<EventContinuity> continuity_report(const PiecewiseReparameterization& p,
                                               const NurbsCurve& c, const NurbsCurve& d,
                                               const Tolerances& tol) {
  std::vector<EventContinuity> out;
  for (const KnotEvent& e : p.events) {
    EventContinuity ec;
    ec.event = e;
    const RationalBezierCurve& cl = c.segments()[e.c_before].curve;
    const RationalBezierCurve& dl = d.segments()[e.d_before].curve;
    const RationalBezierCurve& cr = c.segments()[e.c_after].curve;
    const RationalBezierCurve& dr = d.segments()[e.d_after].curve;
    ec.T_left = nearest_root(cl, dl, e.t, e.T, tol);
    ec.T_right = nearest_root(cr, dr, e.t, e.T, tol);
    ec.Tprime_left = detail::piece_tprime(cl, dl, e.t, ec.T_left, tol);
    ec.Tprime_right = detail::piece_tprime(cr, dr, e.t, ec.T_right, tol);
    out.push_back(ec);
  }
  return out;
}

}  // namespace devsurf
