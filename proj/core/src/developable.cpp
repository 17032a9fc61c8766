#include "devsurf/developable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "devsurf/errors.hpp"
#include "devsurf/polysolve.hpp"
#include "parallel.hpp"
#include "tracking.hpp"

namespace devsurf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int sign_with_threshold(double x, double scale) {
  if (!(std::abs(x) > 1e-12 * scale)) return 0;
  return x > 0.0 ? 1 : -1;
}

}  // namespace

CornerReport check_corner_conditions(CurveRef c, CurveRef d, const Tolerances& tol) {
  const auto cp = c.control_points();
  const auto dp = d.control_points();
  const std::size_t n = cp.size() - 1;
  const std::size_t m = dp.size() - 1;
  CornerReport rep;

  {
    const Vec3 a = cp[1] - cp[0];
    const Vec3 b = dp[0] - cp[0];
    const Vec3 e = dp[1] - dp[0];
    rep.residual_start = normalized_triple_product(a, b, e);
    rep.coplanar_start = rep.residual_start <= tol.coplanar;
    rep.same_side_start = dot(cross(a, b), cross(e, b)) > 0.0;
  }
  {
    const Vec3 a = cp[n] - cp[n - 1];
    const Vec3 b = dp[m] - cp[n];
    const Vec3 e = dp[m] - dp[m - 1];
    rep.residual_end = normalized_triple_product(a, b, e);
    rep.coplanar_end = rep.residual_end <= tol.coplanar;
    rep.same_side_end = dot(cross(a, b), cross(e, b)) > 0.0;
  }
  return rep;
}

double reparam_derivative(CurveRef c, CurveRef d, double t, double T, const Tolerances& tol) {
  const Vec3 c1 = c.eval_derivative(t, 1);
  const Vec3 c2 = c.eval_derivative(t, 2);
  const Vec3 d1 = d.eval_derivative(T, 1);
  const Vec3 d2 = d.eval_derivative(T, 2);
  const Vec3 r = d.eval(T) - c.eval(t);
  const double den = triple_product(d2, c1, r);
  const double scale = norm(d2) * norm(c1) * norm(r);
  if (!(scale > 0.0) || std::abs(den) <= tol.singular_derivative * scale)
    throw Error(ErrorCode::SingularDenominator, "det(d_ddot, c', d - c) vanishes");
  return triple_product(c2, d1, r) / den;
}

double nearest_root(const RationalBezierCurve& c, const RationalBezierCurve& d, double t,
                    double hint, const Tolerances& tol) {
  const BivariatePolynomial P = developability_polynomial(c, d, tol);
  if (P.is_zero()) return hint;
  const Interval D = d.domain();
  UnivariateSlice slice{P.slice_at_t(c.domain().to_local(t)), t};
  std::vector<Root> roots;
  try {
    roots = real_roots_in_interval(slice, 0.0, 1.0, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IdenticallyZeroPolynomial) return hint;
    throw;
  }
  if (roots.empty()) throw Error(ErrorCode::NoRealRootOnSlice, "no root in the T-domain");
  double best = D.to_global(roots.front().value);
  for (const Root& r : roots) {
    const double T = D.to_global(r.value);
    if (std::abs(T - hint) < std::abs(best - hint)) best = T;
  }
  return best;
}

std::string cause_string(std::uint8_t causes) {
  std::string out;
  auto add = [&](RegressionCause c, const char* name) {
    if (!has_cause(causes, c)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(RegressionCause::NonMonotone, "non-monotone");
  add(RegressionCause::SingularDerivative, "singular-derivative");
  add(RegressionCause::NoRealRoot, "no-real-root");
  return out;
}

SolveResult solve_reparameterization(const RationalBezierCurve& c, const RationalBezierCurve& d,
                                     const SolveOptions& options) {
  SolveResult res;
  res.corners = check_corner_conditions(c, d, options.tol);
  if (!res.corners.ok() && !options.allow_invalid_corners)
    throw Error(ErrorCode::InvalidArgument, "corner conditions fail; set allow_invalid_corners");
  const std::vector<BezierSegment> cs{{c.domain(), c}};
  const std::vector<BezierSegment> ds{{d.domain(), d}};
  detail::TrackOutput tracked = detail::track(cs, ds, res.corners, options);
  res.reparam = std::move(tracked.reparam);
  res.regression = detect_regression(res.reparam, options.tol);
  res.reparam.monotone = res.regression.empty();
  return res;
}

RegressionReport detect_regression(const Reparameterization& r, const Tolerances&) {
  struct Raw {
    double a;
    double b;
    std::uint8_t cause;
  };
  const auto& s = r.samples;
  const std::size_t n = s.size();
  RegressionReport report;
  if (n == 0) return report;
  const double spanT = r.T_domain.length() > 0.0 ? r.T_domain.length() : 1.0;
  const double spant = r.t_domain.length() > 0.0 ? r.t_domain.length() : 1.0;
  const double sigma = spanT / spant;

  std::vector<Raw> raw;
  for (std::size_t k = 0; k < n; ++k) {
    if (!s[k].solved)
      raw.push_back({s[k].t, s[k].t, static_cast<std::uint8_t>(RegressionCause::NoRealRoot)});
    else if (s[k].singular)
      raw.push_back(
          {s[k].t, s[k].t, static_cast<std::uint8_t>(RegressionCause::SingularDerivative)});
    else if (s[k].Tprime < -1e-9 * sigma)
      raw.push_back({s[k].t, s[k].t, static_cast<std::uint8_t>(RegressionCause::NonMonotone)});
  }
  for (std::size_t k = 1; k < n; ++k)
    if (s[k].solved && s[k - 1].solved && s[k].T < s[k - 1].T - 1e-12 * spanT)
      raw.push_back({s[k - 1].t, s[k].t, static_cast<std::uint8_t>(RegressionCause::NonMonotone)});
  for (std::size_t k : r.branch_jumps) {
    const bool fold = std::any_of(r.folds.begin(), r.folds.end(),
                                  [&](const FoldEvent& f) { return f.sample_index == k; });
    if (fold || k == 0 || !s[k - 1].solved) continue;
    raw.push_back({s[k - 1].t, s[k].t, static_cast<std::uint8_t>(RegressionCause::NonMonotone)});
  }
  for (const FoldEvent& f : r.folds)
    raw.push_back({f.t_start, f.t_end, static_cast<std::uint8_t>(RegressionCause::NonMonotone)});
  if (raw.empty()) return report;

  std::vector<bool> good(n, true);
  for (std::size_t k = 0; k < n; ++k) {
    if (!s[k].solved) good[k] = false;
    for (const Raw& w : raw)
      if (s[k].t >= w.a && s[k].t <= w.b) good[k] = false;
  }

  std::vector<RegressionInterval> padded;
  for (const Raw& w : raw) {
    RegressionInterval iv;
    iv.causes = w.cause;
    std::size_t lo = n;
    std::size_t hi = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (!good[k]) continue;
      if (s[k].t <= w.a) lo = k;
      if (s[k].t >= w.b && hi == n) hi = k;
    }
    if (lo < n) {
      iv.t_start = s[lo].t;
      iv.T_start = s[lo].T;
    } else {
      iv.t_start = r.t_domain.lo;
      iv.T_start = kNaN;
      iv.bounded = false;
    }
    if (hi < n) {
      iv.t_end = s[hi].t;
      iv.T_end = s[hi].T;
    } else {
      iv.t_end = r.t_domain.hi;
      iv.T_end = kNaN;
      iv.bounded = false;
    }
    padded.push_back(iv);
  }
  std::sort(padded.begin(), padded.end(),
            [](const RegressionInterval& x, const RegressionInterval& y) {
              return x.t_start < y.t_start || (x.t_start == y.t_start && x.t_end < y.t_end);
            });
  for (const RegressionInterval& iv : padded) {
    if (!report.intervals.empty() && iv.t_start < report.intervals.back().t_end) {
      RegressionInterval& last = report.intervals.back();
      if (iv.t_end > last.t_end) {
        last.t_end = iv.t_end;
        last.T_end = iv.T_end;
      }
      last.causes = static_cast<std::uint8_t>(last.causes | iv.causes);
      last.bounded = std::isfinite(last.T_start) && std::isfinite(last.T_end);
      continue;
    }
    report.intervals.push_back(iv);
  }
  return report;
}

Ruling make_ruling(CurveRef c, CurveRef d, double t, double T, const Tolerances& tol) {
  Ruling out;
  out.t = t;
  out.T = T;
  out.from = c.eval(t);
  out.to = d.eval(T);
  const Vec3 r = out.to - out.from;
  const double scale = std::max(norm(out.from), norm(out.to));
  if (!(norm(r) > tol.degenerate_length * scale))
    throw Error(ErrorCode::DegenerateRuling, "ruling has zero length");
  const Vec3 c1 = c.eval_derivative(t, 1);
  const Vec3 d1 = d.eval_derivative(T, 1);
  out.residual = normalized_triple_product(c1, d1, r);
  const Vec3 n0 = cross(c1, r);
  const Vec3 n1 = cross(d1, r);
  const double den = norm(n0) * norm(n1);
  out.normal_defect = den > 0.0 ? norm(cross(n0, n1)) / den : 0.0;
  return out;
}

double interpolate_T(CurveRef c, CurveRef d, const Reparameterization& r, double t,
                     const Tolerances&) {
  const auto& s = r.samples;
  if (s.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  if (!r.t_domain.contains(t, 1e-12 * r.t_domain.length()))
    throw Error(ErrorCode::ParameterOutOfRange, "t outside the sampled domain");
  const auto it = std::upper_bound(s.begin(), s.end(), t,
                                   [](double x, const Sample& smp) { return x < smp.t; });
  std::size_t k = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
  if (k + 1 >= s.size()) k = s.size() - 2;
  const Sample& a = s[k];
  const Sample& b = s[k + 1];
  if (t == a.t && a.solved) return a.T;
  if (t == b.t && b.solved) return b.T;
  if (!a.solved || !b.solved)
    throw Error(ErrorCode::NoRealRootOnSlice, "no solved samples around t");

  const double h = b.t - a.t;
  const double x = (t - a.t) / h;
  const bool jump = std::find(r.branch_jumps.begin(), r.branch_jumps.end(), k + 1) !=
                    r.branch_jumps.end();
  double T;
  if (jump) {
    T = x < 0.5 ? a.T : b.T;
  } else if (std::isfinite(a.Tprime) && std::isfinite(b.Tprime)) {
    const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    const double h10 = x * (1 - x) * (1 - x);
    const double h01 = x * x * (3 - 2 * x);
    const double h11 = x * x * (x - 1);
    T = h00 * a.T + h10 * h * a.Tprime + h01 * b.T + h11 * h * b.Tprime;
  } else {
    T = a.T + x * (b.T - a.T);
  }
  if (r.identically_zero) return T;

  const Interval D = d.domain();
  T = std::clamp(T, D.lo, D.hi);
  const Vec3 cpt = c.eval(t);
  const Vec3 c1 = c.eval_derivative(t, 1);
  auto F = [&](double TT) { return triple_product(c1, d.eval_derivative(TT, 1), d.eval(TT) - cpt); };
  double f = F(T);
  for (int iter = 0; iter < 8 && f != 0.0; ++iter) {
    const double df = triple_product(c1, d.eval_derivative(T, 2), d.eval(T) - cpt);
    if (df == 0.0) break;
    const double next = std::clamp(T - f / df, D.lo, D.hi);
    const double fn = F(next);
    if (!(std::abs(fn) < std::abs(f))) break;
    const double step = std::abs(next - T);
    T = next;
    f = fn;
    if (step <= 1e-15 * D.length()) break;
  }
  return T;
}

RuledSurface build_ruled_surface(CurveRef c, CurveRef d, const Reparameterization& r,
                                 std::size_t n_rulings, std::size_t n_across,
                                 const SolveOptions& options) {
  if (n_rulings < 2 || n_across < 2 || r.samples.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least 2 rulings, 2 across and 2 samples");
  RuledSurface out;
  out.rulings.resize(n_rulings);
  const bool direct = n_rulings == r.samples.size();
  const Interval dom = r.t_domain;
  detail::parallel_for(n_rulings, options.threads, [&](std::size_t k) {
    double t;
    double T;
    if (direct) {
      const Sample& smp = r.samples[k];
      if (!smp.solved) throw Error(ErrorCode::NoRealRootOnSlice, "ruling at an unsolved sample");
      t = smp.t;
      T = smp.T;
    } else {
      t = k + 1 == n_rulings ? dom.hi
                             : dom.lo + dom.length() * static_cast<double>(k) /
                                            static_cast<double>(n_rulings - 1);
      T = interpolate_T(c, d, r, t, options.tol);
    }
    out.rulings[k] = make_ruling(c, d, t, T, options.tol);
  });

  double sum = 0.0;
  for (const Ruling& rl : out.rulings) {
    out.max_residual = std::max(out.max_residual, rl.residual);
    out.max_normal_defect = std::max(out.max_normal_defect, rl.normal_defect);
    sum += rl.residual;
  }
  out.mean_residual = sum / static_cast<double>(n_rulings);

  out.mesh.vertices.reserve(n_rulings * n_across);
  for (const Ruling& rl : out.rulings) {
    for (std::size_t m = 0; m < n_across; ++m) {
      const double v = static_cast<double>(m) / static_cast<double>(n_across - 1);
      out.mesh.vertices.push_back((1.0 - v) * rl.from + v * rl.to);
    }
  }
  out.mesh.quads.reserve((n_rulings - 1) * (n_across - 1));
  for (std::size_t k = 0; k + 1 < n_rulings; ++k)
    for (std::size_t m = 0; m + 1 < n_across; ++m)
      out.mesh.quads.push_back({k * n_across + m, (k + 1) * n_across + m,
                                (k + 1) * n_across + m + 1, k * n_across + m + 1});
  return out;
}

std::vector<CurvatureSigns> normal_curvature_signs(CurveRef c, CurveRef d,
                                                   const Reparameterization& r,
                                                   const Tolerances& tol) {
  std::vector<CurvatureSigns> out;
  out.reserve(r.samples.size());
  for (const Sample& smp : r.samples) {
    CurvatureSigns cs;
    cs.t = smp.t;
    if (!smp.solved) {
      cs.valid = false;
      out.push_back(cs);
      continue;
    }
    const Vec3 c1 = c.eval_derivative(smp.t, 1);
    const Vec3 c2 = c.eval_derivative(smp.t, 2);
    const Vec3 d2 = d.eval_derivative(smp.T, 2);
    const Vec3 rr = d.eval(smp.T) - c.eval(smp.t);
    const Vec3 n = cross(c1, rr);
    const double nn = norm(n);
    if (!(nn > tol.degenerate_length * norm(c1) * norm(rr)) || nn == 0.0)
      throw Error(ErrorCode::DegenerateNormal, "tangent plane normal undefined");
    const Vec3 nu = n / nn;
    cs.c_sign = sign_with_threshold(dot(c2, nu), norm(c2));
    cs.d_sign = sign_with_threshold(dot(d2, nu), norm(d2));
    out.push_back(cs);
  }
  return out;
}

}  // namespace devsurf
