#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "devsurf/curves.hpp"
#include "devsurf/geom.hpp"

namespace devsurf::io {

enum class CurveKind { Bezier, Nurbs };

struct CurveSpec {
  CurveKind kind = CurveKind::Bezier;
  int degree = 0;
  std::vector<Vec3> control_points;
  /// Empty means all ones.
  std::vector<double> weights;
  /// Full clamped vector (compact input is expanded on parse). Nurbs only.
  std::vector<double> knots;
  /// Bezier parameter interval.
  Interval interval{};
};

struct DocumentOptions {
  std::optional<std::size_t> samples;
  std::optional<double> tol_coplanar;
  /// 'c' or 'd'.
  std::optional<char> master;
  std::optional<bool> allow_invalid_corners;
  std::optional<std::size_t> multiconic_r;
};

struct CurvePairDocument {
  std::string name;
  CurveSpec c;
  CurveSpec d;
  DocumentOptions options;
};

/// Syntax errors carry a 1-based line; schema errors carry a field path such
/// as "c.control_points[2]".
class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& what, int line, std::string field)
      : std::runtime_error(what), line_(line), field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

CurvePairDocument parse_document(const std::string& text);
/// Throws DocumentError (line 0, empty field) when the file cannot be read.
CurvePairDocument load_document(const std::string& path);

/// Spline view of either kind; a Bezier record becomes a single-span curve.
NurbsCurve to_nurbs(const CurveSpec& spec);

}  // namespace devsurf::io
