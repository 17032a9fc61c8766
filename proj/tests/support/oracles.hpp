#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "devsurf/curves.hpp"
#include "devsurf/geom.hpp"
#include "devsurf/polysolve.hpp"

// Reference implementations used to check the library. None of these call
// into the code under test except for plain data accessors.
namespace oracle {

using devsurf::Vec3;

struct Jet {
  Vec3 p;
  Vec3 d1;
  Vec3 d2;
};

/// Rational Bezier position and t-derivatives on [lo, hi] from the
/// Bernstein form directly: homogeneous sums and the quotient rule.
Jet bezier_jet(const std::vector<Vec3>& pts, const std::vector<double>& w, double t,
               double lo = 0.0, double hi = 1.0);

/// Cox-de Boor rational B-spline point (full clamped knot vector).
Vec3 nurbs_point(int degree, const std::vector<Vec3>& pts, const std::vector<double>& w,
                 const std::vector<double>& knots, double t);

/// w(t)^2 omega(T)^2 det(c'(t), d'(T), d(T) - c(t)) with both curves on [0,1].
double weighted_det(const std::vector<Vec3>& cp, const std::vector<double>& cw,
                    const std::vector<Vec3>& dp, const std::vector<double>& dw, double t,
                    double T);

/// det(c', d', d - c) with the curves given as callables.
double det_along(const std::function<Jet(double)>& c, const std::function<Jet(double)>& d,
                 double t, double T);

/// Largest coefficient gap between a and b after each is divided by its own
/// largest-magnitude coefficient, with the better of the two overall signs.
double coefficient_distance(const std::vector<std::vector<double>>& a,
                            const std::vector<std::vector<double>>& b);

std::vector<std::vector<double>> to_matrix(const devsurf::BivariatePolynomial& p);

/// Closest distance between the closed segments [a0,a1] and [b0,b1].
double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1);

/// Roots of a x^2 + b x + c in the textbook form, ascending.
std::vector<double> textbook_quadratic(double a, double b, double c);

struct RandomCurve {
  std::vector<Vec3> points;
  std::vector<double> weights;
};

/// Control points in [-1,1]^3, optionally flattened to z = plane_z, and
/// weights in [0.5, 2] (all ones when polynomial).
RandomCurve random_curve(std::mt19937_64& rng, int degree, bool rational,
                         std::optional<double> plane_z = std::nullopt);

}  // namespace oracle
