#pragma once

#include <string>
#include <vector>

#include "devsurf/curves.hpp"

namespace fixtures {

using devsurf::NurbsCurve;
using devsurf::RationalBezierCurve;
using devsurf::Vec3;

inline std::string data_path(const std::string& name) {
  return std::string(DEVSURF_DATA_DIR) + "/" + name;
}

struct BezierPair {
  RationalBezierCurve c;
  RationalBezierCurve d;
};

struct NurbsPair {
  NurbsCurve c;
  NurbsCurve d;
};

inline BezierPair opposite_parabolas() {
  return {RationalBezierCurve({{0, 0, 0}, {0, 1, 0}, {2, 1, 0}}),
          RationalBezierCurve({{0, 0, 1}, {0, -1.5, 1}, {1, -1.5, 1}})};
}

inline BezierPair parallel_parabolas() {
  return {RationalBezierCurve({{0, 0, 0}, {0, 1, 0}, {2, 1, 0}}),
          RationalBezierCurve({{0, 0, 1}, {0, 1.5, 1}, {1, 1.5, 1}})};
}

inline BezierPair parallel_cubics() {
  return {RationalBezierCurve({{0, 0, 0}, {1, 0, 0}, {2, 1, 0}, {2, 3, 0}}),
          RationalBezierCurve({{0, 0, 1}, {1.5, 0, 1}, {2, 1.5, 1}, {2, 2.5, 1}})};
}

inline BezierPair bezier_developable_cubics() {
  return {RationalBezierCurve({{0, 0, 0}, {3, 3, 0}, {4, 3, 0}, {5, 0, 0}}),
          RationalBezierCurve(
              {{0, 0, 2}, {2, 2, 3}, {13.0 / 6, 1.5, 4.5}, {23.0 / 12, -1.25, 6.75}})};
}

inline BezierPair bumped_quartics() {
  return {RationalBezierCurve({{0, 0, 0}, {1, 1, 0}, {2, 1, 0}, {3, 1, 0}, {4, 0, 0}}),
          RationalBezierCurve({{0, 0, 1}, {1, 1, 1}, {2, -0.5, 1}, {3, 1, 1}, {4, 0, 1}})};
}

inline BezierPair vase() {
  return {RationalBezierCurve({{1.05, 47.594, 79.90}, {-3.697, 55.816, 59.541}, {-0.225, 45.386, 39.950}}),
          RationalBezierCurve({{12.95, 47.594, 79.90}, {14.711, 56.613, 59.401}, {14.225, 45.386, 39.95}})};
}

inline BezierPair rational_cubics() {
  return {RationalBezierCurve({{0, 0, 0}, {1, 0, 0}, {2, 1, 0}, {2, 3, 0}}, {1, 0.5, 1.0 / 3, 1}),
          RationalBezierCurve({{0, 0, 1}, {1.5, 0, 1.5}, {1.5, 1.5, 1.5}, {1.5, 2.5, 1.5}},
                              {1, 1.0 / 3, 0.25, 1})};
}

inline std::vector<double> two_piece_knots() { return {0, 0, 0, 0, 1, 2, 2, 2, 2}; }

inline NurbsPair spline_cubics() {
  return {NurbsCurve(3, {{0, 0, 0}, {0, 1, 0}, {1, 1.5, 0}, {2, 1, 0}, {3, 0, 0}}, {},
                     two_piece_knots()),
          NurbsCurve(3, {{0, 0, 1}, {0, 1.5, 1}, {0.5, 2, 1}, {1, 2, 1}, {2, 1, 1}}, {},
                     two_piece_knots())};
}

inline NurbsCurve hull_sheer() {
  return NurbsCurve(3, {{0, 0, 9}, {6.86, 7.10, 8.22}, {21.6, 8.93, 6.25}, {36.9, 8.73, 5.86}, {45.0, 7.65, 6.10}},
                    {}, two_piece_knots());
}

inline NurbsCurve hull_chine() {
  return NurbsCurve(3, {{1.40, 0, 5.30}, {10.5, 7.53, 1.93}, {25.7, 7.85, 1.28}, {40.4, 7.46, 1.27}, {44.1, 7.20, 1.70}},
                    {}, two_piece_knots());
}

/// Sheer parameter values at t_chine = 0.0, 0.1, ..., 2.0.
inline std::vector<double> hull_table_sheer() {
  return {0.06, 0.15, 0.25, 0.35, 0.46, 0.58, 0.71, 0.85, 1.09, 1.29, 1.38,
          1.40, 1.43, 1.46, 1.49, 1.52, 1.56, 1.60, 1.65, 1.71, 1.79};
}

}  // namespace fixtures
