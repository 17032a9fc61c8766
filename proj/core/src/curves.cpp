#include "devsurf/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "devsurf/errors.hpp"

namespace devsurf {

namespace {

struct Homogeneous {
  Vec3 p;
  double w = 0.0;
};

Homogeneous lerp(const Homogeneous& a, const Homogeneous& b, double s) {
  return {(1.0 - s) * a.p + s * b.p, (1.0 - s) * a.w + s * b.w};
}

void validate_points(std::span<const Vec3> pts, std::span<const double> weights) {
  for (const auto& p : pts)
    if (!is_finite(p)) throw Error(ErrorCode::InvalidCurve, "control points must be finite");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      std::ostringstream msg;
      msg << "weight " << i << " must be positive, got " << weights[i];
      throw Error(ErrorCode::InvalidCurve, msg.str());
    }
  }
}

}  // namespace

Vec3 HomogeneousForm::numerator_at(double u) const noexcept {
  return {horner(numerator[0], u), horner(numerator[1], u), horner(numerator[2], u)};
}

RationalBezierCurve::RationalBezierCurve(std::vector<Vec3> control_points,
                                         std::vector<double> weights, Interval domain)
    : control_points_(std::move(control_points)), weights_(std::move(weights)), domain_(domain) {
  if (control_points_.size() < 2)
    throw Error(ErrorCode::InvalidCurve, "a curve needs degree >= 1 (at least two control points)");
  if (degree() > kMaxDegree) {
    std::ostringstream msg;
    msg << "degree " << degree() << " exceeds the supported maximum " << kMaxDegree;
    throw Error(ErrorCode::InvalidCurve, msg.str());
  }
  if (weights_.empty()) weights_.assign(control_points_.size(), 1.0);
  if (weights_.size() != control_points_.size())
    throw Error(ErrorCode::InvalidCurve, "weights and control points differ in length");
  if (!(domain_.hi > domain_.lo) || !std::isfinite(domain_.lo) || !std::isfinite(domain_.hi))
    throw Error(ErrorCode::InvalidCurve, "parameter interval must satisfy lo < hi");
  validate_points(control_points_, weights_);
  form_ = homogeneous_power_form(*this);
}

HomogeneousForm homogeneous_power_form(const RationalBezierCurve& curve) {
  const auto pts = curve.control_points();
  const auto w = curve.weights();
  HomogeneousForm form;
  std::vector<double> b(pts.size());
  for (int axis = 0; axis < 3; ++axis) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double coord = axis == 0 ? pts[i].x : axis == 1 ? pts[i].y : pts[i].z;
      b[i] = w[i] * coord;
    }
    form.numerator[axis] = bernstein_to_power(b);
  }
  form.denominator = bernstein_to_power(w);
  return form;
}

void RationalBezierCurve::check_range(double t) const {
  const double slack = 1e-12 * domain_.length();
  if (!domain_.contains(t, slack) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << "parameter " << t << " outside [" << domain_.lo << ", " << domain_.hi << "]";
    throw Error(ErrorCode::ParameterOutOfRange, msg.str());
  }
}

Vec3 RationalBezierCurve::eval(double t) const {
  check_range(t);
  const double u = std::clamp(domain_.to_local(t), 0.0, 1.0);
  std::vector<Homogeneous> h(control_points_.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = {weights_[i] * control_points_[i], weights_[i]};
  for (std::size_t level = h.size() - 1; level > 0; --level)
    for (std::size_t i = 0; i < level; ++i) h[i] = lerp(h[i], h[i + 1], u);
  return h[0].p / h[0].w;
}

CurveJet RationalBezierCurve::jet(double t) const noexcept {
  const double u = domain_.to_local(t);
  const double inv_len = 1.0 / domain_.length();
  const PolyJet wx = horner_jet(form_.numerator[0], u);
  const PolyJet wy = horner_jet(form_.numerator[1], u);
  const PolyJet wz = horner_jet(form_.numerator[2], u);
  const PolyJet w = horner_jet(form_.denominator, u);
  const Vec3 p{wx.value, wy.value, wz.value};
  const Vec3 dp{wx.first, wy.first, wz.first};
  const Vec3 ddp{wx.second, wy.second, wz.second};
  CurveJet out;
  out.point = p / w.value;
  const Vec3 d1 = (dp - w.first * out.point) / w.value;
  const Vec3 d2 = (ddp - 2.0 * w.first * d1 - w.second * out.point) / w.value;
  out.first = d1 * inv_len;
  out.second = d2 * (inv_len * inv_len);
  return out;
}

Vec3 RationalBezierCurve::eval_derivative(double t, int order) const {
  check_range(t);
  if (order != 1 && order != 2)
    throw Error(ErrorCode::InvalidArgument, "derivative order must be 1 or 2");
  const CurveJet j = jet(t);
  return order == 1 ? j.first : j.second;
}

RationalBezierCurve RationalBezierCurve::with_scaled_weights(double s) const {
  std::vector<double> w(weights_);
  for (double& x : w) x *= s;
  return RationalBezierCurve(control_points_, std::move(w), domain_);
}

// ---------------------------------------------------------------------------

NurbsCurve::NurbsCurve(int degree, std::vector<Vec3> control_points, std::vector<double> weights,
                       std::vector<double> knots)
    : degree_(degree),
      control_points_(std::move(control_points)),
      weights_(std::move(weights)),
      knots_(std::move(knots)) {
  if (degree_ < 1 || degree_ > kMaxDegree)
    throw Error(ErrorCode::InvalidCurve, "NURBS degree must be in [1, 10]");
  const std::size_t p = static_cast<std::size_t>(degree_);
  if (control_points_.size() < p + 1)
    throw Error(ErrorCode::InvalidCurve, "NURBS curve needs at least degree+1 control points");
  if (weights_.empty()) weights_.assign(control_points_.size(), 1.0);
  if (weights_.size() != control_points_.size())
    throw Error(ErrorCode::InvalidCurve, "weights and control points differ in length");
  validate_points(control_points_, weights_);
  if (knots_.size() != control_points_.size() + p + 1) {
    std::ostringstream msg;
    msg << "expected " << control_points_.size() + p + 1 << " knots, got " << knots_.size();
    throw Error(ErrorCode::UnclampedKnotVector, msg.str());
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i]))
      throw Error(ErrorCode::UnclampedKnotVector, "knots must be finite");
    if (i > 0 && knots_[i] < knots_[i - 1])
      throw Error(ErrorCode::UnclampedKnotVector, "knots must be non-decreasing");
  }
  for (std::size_t i = 1; i <= p; ++i) {
    if (knots_[i] != knots_[0] || knots_[knots_.size() - 1 - i] != knots_.back())
      throw Error(ErrorCode::UnclampedKnotVector, "end knots must be repeated degree+1 times");
  }
  if (!(knots_.back() > knots_.front()))
    throw Error(ErrorCode::UnclampedKnotVector, "knot vector spans an empty domain");
  for (std::size_t i = p + 1; i + p + 1 < knots_.size();) {
    std::size_t j = i;
    while (j + p + 1 < knots_.size() && knots_[j] == knots_[i]) ++j;
    if (j - i > p)
      throw Error(ErrorCode::InvalidCurve, "interior knot multiplicity exceeds the degree");
    i = j;
  }
  segments_ = bezier_segments(*this);
}

std::vector<double> NurbsCurve::interior_breaks() const {
  std::vector<double> out;
  for (double k : knots_)
    if (k > knots_.front() && k < knots_.back() && (out.empty() || out.back() != k)) out.push_back(k);
  return out;
}

std::size_t NurbsCurve::find_span(double t) const noexcept {
  const std::size_t p = static_cast<std::size_t>(degree_);
  const std::size_t last = control_points_.size() - 1;
  if (t >= knots_[last + 1]) return last;
  if (t <= knots_[p]) return p;
  const auto it = std::upper_bound(knots_.begin() + static_cast<long>(p),
                                   knots_.begin() + static_cast<long>(last + 1), t);
  return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

Vec3 NurbsCurve::eval(double t) const {
  const Interval dom = domain();
  if (!dom.contains(t, 1e-12 * dom.length()) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << "parameter " << t << " outside [" << dom.lo << ", " << dom.hi << "]";
    throw Error(ErrorCode::ParameterOutOfRange, msg.str());
  }
  t = std::clamp(t, dom.lo, dom.hi);
  const std::size_t p = static_cast<std::size_t>(degree_);
  const std::size_t k = find_span(t);
  std::vector<Homogeneous> d(p + 1);
  for (std::size_t j = 0; j <= p; ++j) {
    const std::size_t i = k - p + j;
    d[j] = {weights_[i] * control_points_[i], weights_[i]};
  }
  for (std::size_t r = 1; r <= p; ++r) {
    for (std::size_t j = p; j >= r; --j) {
      const std::size_t i = k - p + j;
      const double denom = knots_[i + p + 1 - r] - knots_[i];
      const double alpha = denom > 0.0 ? (t - knots_[i]) / denom : 0.0;
      d[j] = lerp(d[j - 1], d[j], alpha);
    }
  }
  return d[p].p / d[p].w;
}

std::size_t NurbsCurve::segment_index(double t) const noexcept {
  std::size_t lo = 0;
  std::size_t hi = segments_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (t >= segments_[mid].interval.lo)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

Vec3 NurbsCurve::eval_derivative(double t, int order) const {
  const Interval dom = domain();
  if (!dom.contains(t, 1e-12 * dom.length()) || !std::isfinite(t))
    throw Error(ErrorCode::ParameterOutOfRange, "derivative parameter outside the knot domain");
  if (order != 1 && order != 2)
    throw Error(ErrorCode::InvalidArgument, "derivative order must be 1 or 2");
  const CurveJet j = segments_[segment_index(t)].curve.jet(t);
  return order == 1 ? j.first : j.second;
}

NurbsCurve NurbsCurve::insert_knot(double u, int times) const {
  const Interval dom = domain();
  if (!(u > dom.lo && u < dom.hi))
    throw Error(ErrorCode::InvalidArgument, "inserted knot must lie inside the domain");
  const std::size_t p = static_cast<std::size_t>(degree_);
  std::vector<Homogeneous> pts(control_points_.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {weights_[i] * control_points_[i], weights_[i]};
  std::vector<double> knots = knots_;
  for (int rep = 0; rep < times; ++rep) {
    const auto it = std::upper_bound(knots.begin(), knots.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - knots.begin()) - 1;
    std::vector<Homogeneous> next(pts.size() + 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (i + p <= k) {
        next[i] = pts[i];
      } else if (i > k) {
        next[i] = pts[i - 1];
      } else {
        const double alpha = (u - knots[i]) / (knots[i + p] - knots[i]);
        next[i] = lerp(pts[i - 1], pts[i], alpha);
      }
    }
    knots.insert(knots.begin() + static_cast<long>(k) + 1, u);
    pts = std::move(next);
  }
  std::vector<Vec3> cps(pts.size());
  std::vector<double> w(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    cps[i] = pts[i].p / pts[i].w;
    w[i] = pts[i].w;
  }
  return NurbsCurve(degree_, std::move(cps), std::move(w), std::move(knots));
}

NurbsCurve NurbsCurve::from_bezier(const RationalBezierCurve& bezier) {
  const int p = bezier.degree();
  std::vector<double> knots(static_cast<std::size_t>(p + 1), bezier.domain().lo);
  knots.insert(knots.end(), static_cast<std::size_t>(p + 1), bezier.domain().hi);
  const auto cps = bezier.control_points();
  const auto w = bezier.weights();
  return NurbsCurve(p, {cps.begin(), cps.end()}, {w.begin(), w.end()}, std::move(knots));
}

std::vector<BezierSegment> bezier_segments(const NurbsCurve& curve) {
  const std::size_t p = static_cast<std::size_t>(curve.degree());
  const auto knots = curve.knots();
  // Homogeneous insertion of every interior knot up to multiplicity p.
  std::vector<Homogeneous> pts(curve.control_points().size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    pts[i] = {curve.weights()[i] * curve.control_points()[i], curve.weights()[i]};
  std::vector<double> kv(knots.begin(), knots.end());
  for (double brk : curve.interior_breaks()) {
    const auto mult = static_cast<std::size_t>(std::count(kv.begin(), kv.end(), brk));
    for (std::size_t rep = mult; rep < p; ++rep) {
      const auto it = std::upper_bound(kv.begin(), kv.end(), brk);
      const std::size_t k = static_cast<std::size_t>(it - kv.begin()) - 1;
      std::vector<Homogeneous> next(pts.size() + 1);
      for (std::size_t i = 0; i < next.size(); ++i) {
        if (i + p <= k) {
          next[i] = pts[i];
        } else if (i > k) {
          next[i] = pts[i - 1];
        } else {
          const double alpha = (brk - kv[i]) / (kv[i + p] - kv[i]);
          next[i] = lerp(pts[i - 1], pts[i], alpha);
        }
      }
      kv.insert(kv.begin() + static_cast<long>(k) + 1, brk);
      pts = std::move(next);
    }
  }
  std::vector<double> breaks{kv.front()};
  for (double b : curve.interior_breaks()) breaks.push_back(b);
  breaks.push_back(kv.back());

  std::vector<BezierSegment> out;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    std::vector<Vec3> cps(p + 1);
    std::vector<double> w(p + 1);
    for (std::size_t j = 0; j <= p; ++j) {
      const Homogeneous& h = pts[s * p + j];
      cps[j] = h.p / h.w;
      w[j] = h.w;
    }
    const Interval iv{breaks[s], breaks[s + 1]};
    out.push_back({iv, RationalBezierCurve(std::move(cps), std::move(w), iv)});
  }
  return out;
}

std::vector<double> expand_knot_vector(std::span<const double> knots, int degree,
                                       std::size_t n_control_points) {
  const std::size_t p = static_cast<std::size_t>(degree);
  std::vector<double> full(knots.begin(), knots.end());
  if (knots.size() == n_control_points + p - 1 && !knots.empty()) {
    full.insert(full.begin(), knots.front());
    full.push_back(knots.back());
  } else if (knots.size() != n_control_points + p + 1) {
    std::ostringstream msg;
    msg << "knot vector of length " << knots.size() << " does not fit " << n_control_points
        << " control points of degree " << degree << " (expected " << n_control_points + p + 1
        << " or " << n_control_points + p - 1 << ")";
    throw Error(ErrorCode::UnclampedKnotVector, msg.str());
  }
  return full;
}

std::vector<double> compact_knot_vector(std::span<const double> full_knots) {
  if (full_knots.size() < 2) return {full_knots.begin(), full_knots.end()};
  return {full_knots.begin() + 1, full_knots.end() - 1};
}

Vec3 CurveRef::eval(double t) const {
  return std::visit([t](const auto* c) { return c->eval(t); }, curve_);
}

Vec3 CurveRef::eval_derivative(double t, int order) const {
  return std::visit([t, order](const auto* c) { return c->eval_derivative(t, order); }, curve_);
}

Interval CurveRef::domain() const noexcept {
  return std::visit([](const auto* c) { return Interval(c->domain()); }, curve_);
}

std::span<const Vec3> CurveRef::control_points() const noexcept {
  return std::visit([](const auto* c) { return c->control_points(); }, curve_);
}

}  // namespace devsurf
