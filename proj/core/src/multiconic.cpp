#include "devsurf/multiconic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "devsurf/errors.hpp"

namespace devsurf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> uniform(double lo, double hi, std::size_t r) {
  std::vector<double> out(r + 1);
  for (std::size_t k = 0; k <= r; ++k)
    out[k] = k == r ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(r);
  return out;
}

void add_fallback(ConeRuling& cr, ConeFallback f) {
  cr.fallbacks = static_cast<std::uint8_t>(cr.fallbacks | static_cast<std::uint8_t>(f));
}

}  // namespace

MulticonicRepair multiconic_repair(CurveRef c, CurveRef d, std::span<const double> t_values,
                                   std::span<const double> T_values, const Tolerances& tol) {
  if (t_values.size() != T_values.size() || t_values.size() < 3)
    throw Error(ErrorCode::InvalidArgument, "multiconic repair needs r >= 2 matching parameters");
  const std::size_t r = t_values.size() - 1;
  MulticonicRepair out;
  out.t_start = t_values.front();
  out.t_end = t_values.back();
  out.T_start = T_values.front();
  out.T_end = T_values.back();
  out.r = r;
  out.spacing = ConeSpacing::Explicit;

  ConeRuling first;
  first.t = t_values[0];
  first.T = T_values[0];
  first.c = c.eval(first.t);
  first.d_original = d.eval(first.T);
  first.d_new = first.d_original;
  first.direction = first.d_original - first.c;
  first.vertex = {kNaN, kNaN, kNaN};
  if (!(norm(first.direction) > 0.0))
    throw Error(ErrorCode::DegenerateRuling, "first ruling of the repair has zero length");
  {
    const Vec3 v = d.eval_derivative(first.T, 1);
    const Vec3 a = d.eval_derivative(first.T, 2);
    try {
      const Plane beta = osculating_plane(first.d_original, v, a, tol);
      first.beta_point = beta.point();
      first.beta_normal = beta.normal();
    } catch (const Error&) {
      first.beta_point = first.d_original;
      first.beta_normal = {kNaN, kNaN, kNaN};
    }
  }
  out.rulings.push_back(first);

  for (std::size_t k = 1; k <= r; ++k) {
    const ConeRuling& prev = out.rulings.back();
    ConeRuling cr;
    cr.k = k;
    cr.t = t_values[k];
    cr.T = T_values[k];
    cr.c = c.eval(cr.t);
    cr.d_original = d.eval(cr.T);
    const Vec3 tangent = d.eval_derivative(cr.T, 1);
    const Vec3 accel = d.eval_derivative(cr.T, 2);
    const Vec3 u = cr.d_original - cr.c;
    const Vec3 n_gamma = cross(u, tangent);
    const Vec3 n_alpha = cross(u, n_gamma);

    bool translated = true;
    if (norm(n_alpha) > 0.0) {
      try {
        const Plane alpha(cr.c, n_alpha);
        cr.vertex = line_plane_intersection(Line3(prev.c, prev.direction), alpha, tol);
        Vec3 dir = cr.c - cr.vertex;
        const double len = norm(dir);
        const double scale = std::max({norm(cr.c), norm(cr.vertex), norm(u)});
        if (len > tol.degenerate_length * scale) {
          if (dot(dir, u) < 0.0) dir = -dir;
          cr.direction = dir * (norm(u) / len);
          cr.has_vertex = true;
          translated = false;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ParallelLinePlane) throw;
      }
    }
    if (translated) {
      add_fallback(cr, ConeFallback::VertexAtInfinity);
      cr.vertex = {kNaN, kNaN, kNaN};
      cr.direction = prev.direction;
    }

    Vec3 beta_normal;
    try {
      const Plane beta = osculating_plane(cr.d_original, tangent, accel, tol);
      beta_normal = beta.normal();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateOsculatingPlane) throw;
      if (!(norm(n_gamma) > 0.0))
        throw Error(ErrorCode::DegenerateOsculatingPlane,
                    "d is straight and tangent to the ruling at the repair point");
      add_fallback(cr, ConeFallback::TangentPlaneAsOsculating);
      beta_normal = n_gamma / norm(n_gamma);
    }
    cr.beta_point = cr.d_original;
    cr.beta_normal = beta_normal;
    try {
      cr.d_new = line_plane_intersection(Line3(cr.c, cr.direction), Plane(cr.beta_point, beta_normal),
                                         tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParallelLinePlane) throw;
      add_fallback(cr, ConeFallback::EndpointProjected);
      const double s = dot(cr.d_original - cr.c, cr.direction) / dot(cr.direction, cr.direction);
      cr.d_new = cr.c + s * cr.direction;
    }
    out.rulings.push_back(cr);
  }

  for (const ConeRuling& cr : out.rulings) out.replaced_boundary.push_back(cr.d_new);
  out.closure_gap = norm(out.rulings.back().d_new - out.rulings.back().d_original);
  return out;
}

MulticonicRepair multiconic_repair(CurveRef c, CurveRef d, const RegressionInterval& interval,
                                   std::size_t r, const Tolerances& tol) {
  if (r < 2) throw Error(ErrorCode::InvalidArgument, "multiconic repair needs r >= 2");
  Interval Tdom = d.domain();
  const double T0 = std::isfinite(interval.T_start) ? interval.T_start : Tdom.lo;
  const double T1 = std::isfinite(interval.T_end) ? interval.T_end : Tdom.hi;
  const std::vector<double> ts = uniform(interval.t_start, interval.t_end, r);
  const std::vector<double> Ts = uniform(T0, T1, r);
  MulticonicRepair out = multiconic_repair(c, d, ts, Ts, tol);
  out.spacing = ConeSpacing::Uniform;
  return out;
}

MulticonicRepair multiconic_repair_paired(CurveRef c, CurveRef d, const Reparameterization& reparam,
                                          double t_start, double t_end, std::size_t r,
                                          const Tolerances& tol) {
  if (r < 2) throw Error(ErrorCode::InvalidArgument, "multiconic repair needs r >= 2");
  const std::vector<double> ts = uniform(t_start, t_end, r);
  std::vector<double> Ts(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) Ts[k] = interpolate_T(c, d, reparam, ts[k], tol);
  MulticonicRepair out = multiconic_repair(c, d, ts, Ts, tol);
  out.spacing = ConeSpacing::Paired;
  return out;
}

std::vector<SplicedRuling> splice_repairs(std::span<const Ruling> original,
                                          std::span<const MulticonicRepair> repairs) {
  std::vector<SplicedRuling> out;
  auto inside = [&](double t) {
    return std::any_of(repairs.begin(), repairs.end(), [t](const MulticonicRepair& rp) {
      return t >= rp.t_start && t <= rp.t_end;
    });
  };
  for (const Ruling& rl : original) {
    if (inside(rl.t)) continue;
    SplicedRuling s;
    s.t = rl.t;
    s.T = rl.T;
    s.from = rl.from;
    s.to = rl.to;
    s.vertex = {kNaN, kNaN, kNaN};
    out.push_back(s);
  }
  for (const MulticonicRepair& rp : repairs) {
    for (const ConeRuling& cr : rp.rulings) {
      SplicedRuling s;
      s.cone = true;
      s.t = cr.t;
      s.T = cr.T;
      s.from = cr.c;
      s.vertex = cr.vertex;
      s.has_vertex = cr.has_vertex;
      s.to = cr.d_new;
      out.push_back(s);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SplicedRuling& a, const SplicedRuling& b) { return a.t < b.t; });
  return out;
}

}  // namespace devsurf
