#include "devsurf/geom.hpp"

#include <ostream>
#include <sstream>

#include "devsurf/errors.hpp"

namespace devsurf {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  return v / n;
}

double normalized_triple_product(const Vec3& a, const Vec3& b, const Vec3& c) noexcept {
  const double scale = norm(a) * norm(b) * norm(c);
  if (!(scale > 0.0)) return 0.0;
  return std::abs(triple_product(a, b, c)) / scale;
}

Plane::Plane(const Vec3& point, const Vec3& normal) : point_(point), normal_(normalized(normal)) {}

Line3::Line3(const Vec3& origin, const Vec3& direction) : origin_(origin), direction_(direction) {
  if (!(norm(direction) > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "line direction must be nonzero");
  }
}

Vec3 line_plane_intersection(const Line3& line, const Plane& plane, const Tolerances& tol) {
  const Vec3& dir = line.direction();
  const double denom = dot(dir, plane.normal());
  if (std::abs(denom) <= tol.parallel_cosine * norm(dir)) {
    std::ostringstream msg;
    msg << "line direction " << dir << " is parallel to plane with normal " << plane.normal();
    throw Error(ErrorCode::ParallelLinePlane, msg.str());
  }
  const double s = dot(plane.point() - line.origin(), plane.normal()) / denom;
  return line.at(s);
}

Plane osculating_plane(const Vec3& position, const Vec3& velocity, const Vec3& acceleration,
                       const Tolerances& tol) {
  const Vec3 n = cross(velocity, acceleration);
  const double scale = norm(velocity) * norm(acceleration);
  if (!(scale > 0.0) || norm(n) <= tol.osculating * scale) {
    throw Error(ErrorCode::DegenerateOsculatingPlane, "velocity and acceleration are parallel");
  }
  return Plane(position, n);
}

}  // namespace devsurf
