#include "tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "devsurf/errors.hpp"
#include "devsurf/polysolve.hpp"

namespace devsurf::detail {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct State {
  double t = 0.0;
  double T = 0.0;
  double Tp = 0.0;
  double secant = kNaN;
  std::size_t i = 0;
  std::size_t j = 0;
};

struct HistoryPoint {
  double t;
  double T;
  std::size_t i;
  std::size_t j;
};

enum class StepOutcome { Reached, Lost };

struct Candidate {
  double T;
  std::size_t j;
};

/// Linear interpolation in a history ordered in t (either direction).
HistoryPoint interpolate(const std::vector<HistoryPoint>& hist, double t) {
  if (hist.size() == 1) return hist.front();
  for (std::size_t k = 0; k + 1 < hist.size(); ++k) {
    const HistoryPoint& a = hist[k];
    const HistoryPoint& b = hist[k + 1];
    if ((t - a.t) * (t - b.t) <= 0.0) {
      const double s = b.t != a.t ? (t - a.t) / (b.t - a.t) : 0.0;
      const HistoryPoint& near = s < 0.5 ? a : b;
      return {t, a.T + s * (b.T - a.T), near.i, near.j};
    }
  }
  const HistoryPoint& first = hist.front();
  const HistoryPoint& last = hist.back();
  return std::abs(t - first.t) < std::abs(t - last.t) ? first : last;
}

class Tracker {
 public:
  Tracker(const std::vector<BezierSegment>& c, const std::vector<BezierSegment>& d,
          const CornerReport& corners, const SolveOptions& options)
      : c_(c),
        d_(d),
        corners_(corners),
        opt_(options),
        tol_(options.tol),
        tdom_{c.front().interval.lo, c.back().interval.hi},
        Tdom_{d.front().interval.lo, d.back().interval.hi},
        polys_(c.size() * d.size()) {
    spant_ = tdom_.length();
    spanT_ = Tdom_.length();
    sigma_ = spanT_ / spant_;
  }

  TrackOutput run();

 private:
  const BivariatePolynomial& poly(std::size_t i, std::size_t j) {
    auto& slot = polys_[i * d_.size() + j];
    if (!slot) slot = developability_polynomial(c_[i].curve, d_[j].curve, tol_);
    return *slot;
  }

  Interval window(std::size_t j) const {
    const Interval D = d_[j].interval;
    const double ext = 0.25 * D.length();
    return {j > 0 ? D.lo - ext : D.lo, j + 1 < d_.size() ? D.hi + ext : D.hi};
  }

  std::vector<double> roots_in(double t, std::size_t i, std::size_t j, Interval win,
                               double hint) {
    const BivariatePolynomial& P = poly(i, j);
    if (P.is_zero()) return {std::clamp(hint, win.lo, win.hi)};
    const Interval D = d_[j].interval;
    UnivariateSlice slice{P.slice_at_t(c_[i].interval.to_local(t)), t};
    std::vector<double> out;
    try {
      for (const Root& r : real_roots_in_interval(slice, D.to_local(win.lo), D.to_local(win.hi), tol_))
        out.push_back(D.to_global(r.value));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IdenticallyZeroPolynomial) throw;
      out.push_back(std::clamp(hint, win.lo, win.hi));
    }
    return out;
  }

  std::vector<Candidate> all_roots(double t, std::size_t i) {
    std::vector<Candidate> out;
    for (std::size_t j = 0; j < d_.size(); ++j)
      for (double T : roots_in(t, i, j, d_[j].interval, d_[j].interval.lo))
        out.push_back({T, j});
    std::stable_sort(out.begin(), out.end(),
                     [](const Candidate& a, const Candidate& b) { return a.T < b.T; });
    std::vector<Candidate> unique;
    for (const Candidate& cand : out)
      if (unique.empty() || cand.T - unique.back().T > 1e-9 * spanT_) unique.push_back(cand);
    return unique;
  }

  double near_root(double t, std::size_t i, std::size_t j, double hint) {
    double best = kNaN;
    for (double T : roots_in(t, i, j, window(j), hint))
      if (std::isnan(best) || std::abs(T - hint) < std::abs(best - hint)) best = T;
    return best;
  }

  double tprime(double t, double T, std::size_t i, std::size_t j) const {
    return piece_tprime(c_[i].curve, d_[j].curve, t, T, tol_);
  }

  double residual(double t, std::size_t i, const Candidate& cand) const {
    const CurveJet cj = c_[i].curve.jet(t);
    const CurveJet dj = d_[cand.j].curve.jet(cand.T);
    return normalized_triple_product(cj.first, dj.first, dj.point - cj.point);
  }

  /// Corner ruling at a coplanar end: the domain end of d itself unless a
  /// computed root close to it satisfies the condition better.
  Candidate anchor(double t, std::size_t i, bool at_start, const std::vector<Candidate>& cands) const {
    const double T_end = at_start ? Tdom_.lo : Tdom_.hi;
    Candidate best{T_end, at_start ? std::size_t{0} : d_.size() - 1};
    double best_res = residual(t, i, best);
    for (const Candidate& cand : cands) {
      if (std::abs(cand.T - T_end) > 1e-6 * spanT_) continue;
      const double r = residual(t, i, cand);
      if (r < best_res) {
        best = cand;
        best_res = r;
      }
    }
    return best;
  }

  std::size_t c_piece_at(double t) const {
    std::size_t i = 0;
    while (i + 1 < c_.size() && c_[i + 1].interval.lo <= t) ++i;
    return i;
  }

  std::size_t d_piece_at(double T) const {
    std::size_t j = 0;
    while (j + 1 < d_.size() && d_[j + 1].interval.lo <= T) ++j;
    return j;
  }

  StepOutcome advance_to(State& s, double target);
  StepOutcome step_until(State& s, double target, int dir, bool events,
                         std::vector<HistoryPoint>* hist);
  void cross_d_knot(const State& prev, State& s, double knot, bool up);
  void record(std::size_t k, const State& s);
  void record_unsolved(std::size_t k, double t);
  std::optional<FoldEvent> find_fold(const State& s, double t_lost,
                                     const std::vector<HistoryPoint>& old_branch,
                                     std::size_t sample_index);

  const std::vector<BezierSegment>& c_;
  const std::vector<BezierSegment>& d_;
  CornerReport corners_;
  SolveOptions opt_;
  Tolerances tol_;
  Interval tdom_;
  Interval Tdom_;
  double spant_ = 1.0;
  double spanT_ = 1.0;
  double sigma_ = 1.0;
  double h_grid_ = 0.0;
  double h_min_ = 0.0;
  double h_hint_ = 0.0;
  std::vector<std::optional<BivariatePolynomial>> polys_;
  std::vector<HistoryPoint> hist_;
  TrackOutput out_;
};

StepOutcome Tracker::step_until(State& s, double target, int dir, bool events,
                                std::vector<HistoryPoint>* hist) {
  const double eps = 1e-12 * spant_;
  double h = h_hint_;
  while (dir * (target - s.t) > eps) {
    const double remaining = dir * (target - s.t);
    h = std::min(h, remaining);
    double slope = std::isfinite(s.Tp) ? s.Tp : s.secant;
    if (!std::isfinite(slope)) slope = 0.0;
    if (std::abs(slope) * h > 0.05 * spanT_ * (1.0 + 1e-12)) {
      h = 0.05 * spanT_ / std::abs(slope);
      if (h < h_min_) return StepOutcome::Lost;
      continue;
    }
    const double tn = remaining - h <= eps ? target : s.t + dir * h;
    const double dt = tn - s.t;
    const double pred = s.T + slope * dt;
    const std::vector<double> roots = roots_in(tn, s.i, s.j, window(s.j), pred);
    double best = kNaN;
    double dist = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    for (double R : roots) {
      const double e = std::abs(R - pred);
      if (e < dist) {
        second = dist;
        dist = e;
        best = R;
      } else if (e < second) {
        second = e;
      }
    }
    const double accept = 0.25 * std::abs(slope * dt) + 1e-3 * sigma_ * std::abs(dt);
    if (std::isnan(best) || dist > accept || second <= 4.0 * dist) {
      h = 0.5 * std::abs(dt);
      if (h < h_min_) return StepOutcome::Lost;
      continue;
    }
    const State prev = s;
    s.t = tn;
    s.T = best;
    s.Tp = tprime(tn, best, s.i, s.j);
    s.secant = (best - prev.T) / dt;
    if (hist) hist->push_back({s.t, s.T, s.i, s.j});
    h = std::min(2.0 * std::abs(dt), h_grid_);
    if (events) {
      const Interval D = d_[s.j].interval;
      const double margin = 1e-12 * spanT_;
      if (s.j + 1 < d_.size() && s.T > D.hi + margin)
        cross_d_knot(prev, s, D.hi, true);
      else if (s.j > 0 && s.T < D.lo - margin)
        cross_d_knot(prev, s, D.lo, false);
    }
  }
  h_hint_ = h;
  return StepOutcome::Reached;
}

void Tracker::cross_d_knot(const State& prev, State& s, double knot, bool up) {
  double a = prev.t;
  double b = s.t;
  double Ta = prev.T;
  double Tb = s.T;
  const double stop = 1e-2 * tol_.event * spant_;
  for (int it = 0; it < 200 && b - a > stop; ++it) {
    const double m = 0.5 * (a + b);
    const double hint = Ta + (Tb - Ta) * (m - a) / (b - a);
    const double Tm = near_root(m, s.i, s.j, hint);
    if (std::isnan(Tm))
      throw Error(ErrorCode::EventLocalizationFailure, "branch lost while locating a d knot");
    if ((Tm > knot) == up) {
      b = m;
      Tb = Tm;
    } else {
      a = m;
      Ta = Tm;
    }
  }
  const double t_e = Tb != Ta ? std::clamp(a + (knot - Ta) * (b - a) / (Tb - Ta), a, b) : b;
  const double T_left = near_root(t_e, s.i, s.j, knot);
  const std::size_t new_j = up ? s.j + 1 : s.j - 1;
  const double T_right = near_root(t_e, s.i, new_j, knot);
  if (std::isnan(T_left) || std::isnan(T_right))
    throw Error(ErrorCode::EventLocalizationFailure, "no root on the next d piece at the knot");

  auto& events = out_.events;
  const double same = tol_.event * spant_;
  if (!events.empty() && std::abs(events.back().t - t_e) <= same) {
    KnotEvent& last = events.back();
    if (last.owner == KnotOwner::D)
      throw Error(ErrorCode::EventLocalizationFailure, "branch oscillates across a d knot");
    last.owner = KnotOwner::Both;
    last.d_after = new_j;
  } else {
    events.push_back({t_e, T_left, KnotOwner::D, s.i, s.j, s.i, new_j});
  }
  s.t = t_e;
  s.T = T_right;
  s.j = new_j;
  s.Tp = tprime(t_e, T_right, s.i, new_j);
  hist_.push_back({s.t, s.T, s.i, s.j});
}

StepOutcome Tracker::advance_to(State& s, double target) {
  const double eps = 1e-12 * spant_;
  while (target - s.t > eps) {
    const Interval C = c_[s.i].interval;
    const bool knot = s.i + 1 < c_.size() && C.hi - eps <= target;
    const double seg_target = knot ? C.hi : target;
    if (step_until(s, seg_target, +1, true, &hist_) == StepOutcome::Lost) return StepOutcome::Lost;
    if (!knot) continue;
    s.t = C.hi;
    const std::size_t ni = s.i + 1;
    const double Tn = near_root(C.hi, ni, s.j, s.T);
    if (std::isnan(Tn)) return StepOutcome::Lost;
    auto& events = out_.events;
    if (!events.empty() && events.back().owner == KnotOwner::D &&
        std::abs(events.back().t - C.hi) <= tol_.event * spant_) {
      events.back().owner = KnotOwner::Both;
      events.back().c_after = ni;
    } else {
      events.push_back({C.hi, s.T, KnotOwner::C, s.i, s.j, ni, s.j});
    }
    s.i = ni;
    s.T = Tn;
    s.Tp = tprime(s.t, Tn, s.i, s.j);
    hist_.push_back({s.t, s.T, s.i, s.j});
  }
  return StepOutcome::Reached;
}

void Tracker::record(std::size_t k, const State& s) {
  Sample& smp = out_.reparam.samples[k];
  smp.T = s.T;
  smp.Tprime = s.Tp;
  smp.c_piece = s.i;
  smp.d_piece = s.j;
  smp.solved = true;
  smp.singular = !std::isfinite(s.Tp);
}

void Tracker::record_unsolved(std::size_t k, double t) {
  Sample& smp = out_.reparam.samples[k];
  smp.T = kNaN;
  smp.Tprime = kNaN;
  smp.c_piece = c_piece_at(t);
  smp.d_piece = 0;
  smp.solved = false;
  smp.singular = false;
}

std::optional<FoldEvent> Tracker::find_fold(const State& s, double t_lost,
                                            const std::vector<HistoryPoint>& old_branch,
                                            std::size_t sample_index) {
  State b = s;
  std::vector<HistoryPoint> back{{b.t, b.T, b.i, b.j}};
  const double saved = h_hint_;
  h_hint_ = h_grid_;
  const StepOutcome outcome = step_until(b, c_[b.i].interval.lo, -1, false, &back);
  h_hint_ = saved;
  if (outcome != StepOutcome::Lost || !(b.t < t_lost - 1e-12 * spant_)) return std::nullopt;

  FoldEvent fold;
  fold.t_start = b.t;
  fold.t_end = t_lost;
  fold.sample_index = sample_index;
  const HistoryPoint on_new = interpolate(back, t_lost);
  const double T_end = near_root(t_lost, on_new.i, on_new.j, on_new.T);
  fold.T_end = std::isnan(T_end) ? on_new.T : T_end;
  const HistoryPoint on_old = interpolate(old_branch, b.t);
  const double T_start = near_root(b.t, on_old.i, on_old.j, on_old.T);
  fold.T_start = std::isnan(T_start) ? on_old.T : T_start;
  return fold;
}

TrackOutput Tracker::run() {
  const std::size_t n = opt_.n_samples;
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "at least two samples are required");
  Reparameterization& rep = out_.reparam;
  rep.t_domain = tdom_;
  rep.T_domain = Tdom_;
  rep.anchored_start = corners_.coplanar_start;
  rep.anchored_end = corners_.coplanar_end;
  rep.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    rep.samples[k].t = k + 1 == n ? tdom_.hi : tdom_.lo + spant_ * static_cast<double>(k) /
                                                              static_cast<double>(n - 1);
  h_grid_ = spant_ / static_cast<double>(n - 1);
  h_min_ = 1e-11 * spant_;
  h_hint_ = h_grid_;

  if (poly(0, 0).is_zero()) {
    rep.identically_zero = true;
    for (Sample& s : rep.samples) {
      s.T = Tdom_.lo + (s.t - tdom_.lo) * sigma_;
      s.Tprime = sigma_;
      s.c_piece = c_piece_at(s.t);
      s.d_piece = d_piece_at(s.T);
    }
    return std::move(out_);
  }

  State s;
  bool tracking = false;
  bool ever = false;
  double last_T = kNaN;
  bool lost_pending = false;
  double t_lost = 0.0;
  std::vector<HistoryPoint> lost_branch;

  for (std::size_t k = 0; k < n; ++k) {
    const double tk = rep.samples[k].t;
    if (tracking) {
      if (advance_to(s, tk) == StepOutcome::Reached) {
        record(k, s);
        last_T = s.T;
        continue;
      }
      tracking = false;
      lost_pending = true;
      t_lost = s.t;
      last_T = s.T;
      lost_branch = hist_;
    }

    const std::size_t i = c_piece_at(tk);
    const std::vector<Candidate> cands = all_roots(tk, i);
    const bool anchor_here = k == 0 && rep.anchored_start;
    if (cands.empty() && !anchor_here) {
      record_unsolved(k, tk);
      continue;
    }
    Candidate pick = anchor_here ? anchor(tk, i, true, cands) : cands.front();
    if (!anchor_here && ever) {
      const auto above = std::find_if(cands.begin(), cands.end(), [&](const Candidate& cand) {
        return cand.T >= last_T - 1e-9 * spanT_;
      });
      pick = above != cands.end() ? *above : cands.back();
    }
    s = State{tk, pick.T, tprime(tk, pick.T, i, pick.j), kNaN, i, pick.j};
    // A branch with a vertical tangent that ends right on a sample is lost a
    // hair before it; the root found on the sample is its end point.
    const bool continuation = lost_pending && tk - t_lost <= 1e-8 * spant_ &&
                              std::abs(pick.T - last_T) <= 1e-4 * spanT_;
    if (ever && !continuation) rep.branch_jumps.push_back(k);
    if (lost_pending && !continuation) {
      if (auto fold = find_fold(s, t_lost, lost_branch, k)) rep.folds.push_back(*fold);
    }
    lost_pending = false;
    hist_.clear();
    hist_.push_back({s.t, s.T, s.i, s.j});
    h_hint_ = h_grid_;
    tracking = true;
    ever = true;
    last_T = s.T;
    record(k, s);
  }

  Sample& last = rep.samples.back();
  if (rep.anchored_end) {
    const std::size_t i = last.solved ? last.c_piece : c_piece_at(tdom_.hi);
    const Candidate a = anchor(tdom_.hi, i, false, all_roots(tdom_.hi, i));
    bool jump;
    if (last.solved)
      jump = std::abs(a.T - last.T) > 1e-6 * spanT_;
    else
      jump = ever && !(lost_pending && tdom_.hi - t_lost <= 1e-8 * spant_ &&
                       std::abs(a.T - last_T) <= 1e-4 * spanT_);
    if (jump && (rep.branch_jumps.empty() || rep.branch_jumps.back() != n - 1))
      rep.branch_jumps.push_back(n - 1);
    record(n - 1, State{tdom_.hi, a.T, tprime(tdom_.hi, a.T, i, a.j), kNaN, i, a.j});
  }

  // A vertical tangent onto an anchored corner ruling is not a singularity
  // of the patch: the slope is infinite with the sign of the approach.
  auto vertical_corner = [&](std::size_t k, std::size_t nb, bool anchored) {
    Sample& smp = rep.samples[k];
    const Sample& other = rep.samples[nb];
    if (!anchored || !smp.solved || !smp.singular || !other.solved) return;
    const double secant = (other.T - smp.T) / (other.t - smp.t);
    smp.Tprime = std::copysign(std::numeric_limits<double>::infinity(), secant);
    smp.singular = false;
  };
  vertical_corner(0, 1, rep.anchored_start);
  vertical_corner(n - 1, n - 2, rep.anchored_end);
  return std::move(out_);
}

}  // namespace

double piece_tprime(const RationalBezierCurve& c, const RationalBezierCurve& d, double t, double T,
                    const Tolerances& tol) {
  const CurveJet cj = c.jet(t);
  const CurveJet dj = d.jet(T);
  const Vec3 r = dj.point - cj.point;
  const double den = triple_product(dj.second, cj.first, r);
  const double scale = norm(dj.second) * norm(cj.first) * norm(r);
  if (!(scale > 0.0) || std::abs(den) <= tol.singular_derivative * scale) return kNaN;
  return triple_product(cj.second, dj.first, r) / den;
}

TrackOutput track(const std::vector<BezierSegment>& c, const std::vector<BezierSegment>& d,
                  const CornerReport& corners, const SolveOptions& options) {
  if (c.empty() || d.empty()) throw Error(ErrorCode::InvalidArgument, "curves without pieces");
  Tracker tracker(c, d, corners, options);
  return tracker.run();
}

}  // namespace devsurf::detail
