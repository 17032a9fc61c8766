#pragma once

#include <cmath>
#include <iosfwd>

#include "devsurf/config.hpp"

namespace devsurf {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) noexcept {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) noexcept {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) noexcept {
    x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr Vec3& operator/=(double s) noexcept {
    x /= s; y /= s; z /= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
  friend constexpr Vec3 operator/(Vec3 a, double s) noexcept { return a /= s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

std::ostream& operator<<(std::ostream& os, const Vec3& v);

constexpr double dot(const Vec3& a, const Vec3& b) noexcept {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) noexcept { return std::sqrt(dot(v, v)); }

inline bool is_finite(const Vec3& v) noexcept {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Unit vector along v. Throws InvalidArgument for the zero vector.
Vec3 normalized(const Vec3& v);

/// det of the 3x3 matrix with rows a, b, c.
constexpr double triple_product(const Vec3& a, const Vec3& b, const Vec3& c) noexcept {
  return dot(a, cross(b, c));
}

/// |det(a,b,c)| / (|a||b||c|), the sine-like coplanarity measure in [0,1].
/// Returns 0 when any argument is the zero vector.
double normalized_triple_product(const Vec3& a, const Vec3& b, const Vec3& c) noexcept;

/// Plane through `point` with unit `normal`.
class Plane {
 public:
  /// Normalizes `normal`; throws InvalidArgument if it is zero.
  Plane(const Vec3& point, const Vec3& normal);

  const Vec3& point() const noexcept { return point_; }
  const Vec3& normal() const noexcept { return normal_; }
  double signed_distance(const Vec3& p) const noexcept { return dot(p - point_, normal_); }

 private:
  Vec3 point_;
  Vec3 normal_;
};

class Line3 {
 public:
  /// Throws InvalidArgument if `direction` is zero.
  Line3(const Vec3& origin, const Vec3& direction);

  static Line3 through(const Vec3& a, const Vec3& b) { return Line3(a, b - a); }

  const Vec3& origin() const noexcept { return origin_; }
  const Vec3& direction() const noexcept { return direction_; }
  Vec3 at(double s) const noexcept { return origin_ + s * direction_; }

 private:
  Vec3 origin_;
  Vec3 direction_;
};

/// Throws ParallelLinePlane when |cos(direction, normal)| <= tol.parallel_cosine.
Vec3 line_plane_intersection(const Line3& line, const Plane& plane, const Tolerances& tol = {});

/// Plane spanned by velocity and acceleration through `position`.
/// Throws DegenerateOsculatingPlane when the curve is locally straight.
Plane osculating_plane(const Vec3& position, const Vec3& velocity, const Vec3& acceleration,
                       const Tolerances& tol = {});

}  // namespace devsurf
