#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "devsurf/geom.hpp"
#include "devsurf/power_basis.hpp"

namespace devsurf {

/// Closed parameter interval [lo, hi] with lo < hi.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  constexpr double length() const noexcept { return hi - lo; }
  constexpr double to_local(double x) const noexcept { return (x - lo) / (hi - lo); }
  constexpr double to_global(double u) const noexcept { return lo + u * (hi - lo); }
  constexpr bool contains(double x, double slack = 0.0) const noexcept {
    return x >= lo - slack && x <= hi + slack;
  }
  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

/// Homogeneous power-basis form c(u) = p(u) / w(u) in the local parameter
/// u in [0,1] of a Bezier piece.
struct HomogeneousForm {
  std::array<Coeffs, 3> numerator;
  Coeffs denominator;

  Vec3 numerator_at(double u) const noexcept;
};

/// Position with first and second derivatives, all with respect to the
/// global parameter.
struct CurveJet {
  Vec3 point;
  Vec3 first;
  Vec3 second;
};

inline constexpr int kMaxDegree = 10;

class RationalBezierCurve {
 public:
  /// Empty `weights` means all ones. Throws InvalidCurve for degree 0,
  /// degree > kMaxDegree, non-positive weights, length mismatches, non-finite
  /// input or an empty domain.
  explicit RationalBezierCurve(std::vector<Vec3> control_points, std::vector<double> weights = {},
                               Interval domain = {});

  int degree() const noexcept { return static_cast<int>(control_points_.size()) - 1; }
  std::span<const Vec3> control_points() const noexcept { return control_points_; }
  std::span<const double> weights() const noexcept { return weights_; }
  const Interval& domain() const noexcept { return domain_; }
  const HomogeneousForm& power_form() const noexcept { return form_; }

  /// Rational de Casteljau. Throws ParameterOutOfRange outside the domain.
  Vec3 eval(double t) const;

  /// order 1 or 2. Throws ParameterOutOfRange outside the domain.
  Vec3 eval_derivative(double t, int order) const;

  /// Analytic continuation of the rational polynomial, no range check.
  CurveJet jet(double t) const noexcept;

  /// Same curve with all weights scaled by s > 0.
  RationalBezierCurve with_scaled_weights(double s) const;

 private:
  void check_range(double t) const;

  std::vector<Vec3> control_points_;
  std::vector<double> weights_;
  Interval domain_;
  HomogeneousForm form_;
};

/// Power-basis numerator and denominator in the local parameter.
HomogeneousForm homogeneous_power_form(const RationalBezierCurve& curve);

struct BezierSegment {
  Interval interval;
  RationalBezierCurve curve;
};

/// Clamped NURBS curve. Knot vectors carry n_cp + degree + 1 entries.
class NurbsCurve {
 public:
  /// Throws InvalidCurve for inconsistent sizes or weights and
  /// UnclampedKnotVector when the end knots are not repeated degree+1 times
  /// or the knots decrease.
  NurbsCurve(int degree, std::vector<Vec3> control_points, std::vector<double> weights,
             std::vector<double> knots);

  int degree() const noexcept { return degree_; }
  std::span<const Vec3> control_points() const noexcept { return control_points_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> knots() const noexcept { return knots_; }
  Interval domain() const noexcept { return {knots_.front(), knots_.back()}; }

  /// Distinct interior knot values, ascending.
  std::vector<double> interior_breaks() const;

  /// de Boor in homogeneous coordinates.
  Vec3 eval(double t) const;
  /// Evaluated on the Bezier piece containing t (right piece at a knot).
  Vec3 eval_derivative(double t, int order) const;

  const std::vector<BezierSegment>& segments() const noexcept { return segments_; }
  std::size_t segment_index(double t) const noexcept;

  /// Boehm insertion of `u` (repeated `times`), returning the refined curve.
  NurbsCurve insert_knot(double u, int times = 1) const;

  /// Degree-`degree` clamped curve with a single span equal to `bezier`.
  static NurbsCurve from_bezier(const RationalBezierCurve& bezier);

 private:
  std::size_t find_span(double t) const noexcept;

  int degree_;
  std::vector<Vec3> control_points_;
  std::vector<double> weights_;
  std::vector<double> knots_;
  std::vector<BezierSegment> segments_;
};

/// One Bezier piece per nonzero knot span, via knot insertion to full
/// multiplicity.
std::vector<BezierSegment> bezier_segments(const NurbsCurve& curve);

/// Accepts either the full clamped knot vector (n_cp + degree + 1 entries) or
/// the compact form without the outer end knots (n_cp + degree - 1 entries)
/// and returns the full vector. Throws UnclampedKnotVector otherwise.
std::vector<double> expand_knot_vector(std::span<const double> knots, int degree,
                                       std::size_t n_control_points);

/// Inverse of expand_knot_vector: drops one copy of each end knot.
std::vector<double> compact_knot_vector(std::span<const double> full_knots);

/// Non-owning view over either curve kind, for algorithms that only need
/// evaluation and the control polygon.
class CurveRef {
 public:
  CurveRef(const RationalBezierCurve& c) noexcept : curve_(&c) {}  // NOLINT(implicit)
  CurveRef(const NurbsCurve& c) noexcept : curve_(&c) {}           // NOLINT(implicit)

  Vec3 eval(double t) const;
  Vec3 eval_derivative(double t, int order) const;
  Interval domain() const noexcept;
  std::span<const Vec3> control_points() const noexcept;

 private:
  std::variant<const RationalBezierCurve*, const NurbsCurve*> curve_;
};

}  // namespace devsurf
