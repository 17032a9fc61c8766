#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "devsurf/config.hpp"
#include "devsurf/curves.hpp"
#include "devsurf/developable.hpp"
#include "devsurf/geom.hpp"

namespace devsurf {

enum class ConeFallback : std::uint8_t {
  None = 0,
  /// alpha_k parallel to the previous ruling: the previous direction is
  /// translated through c_k (cylinder-like step).
  VertexAtInfinity = 1,
  /// d locally straight: the plane gamma_k stands in for the osculating plane.
  TangentPlaneAsOsculating = 2,
  /// New ruling parallel to beta_k: endpoint is the projection of d_k.
  EndpointProjected = 4,
};

constexpr bool has_fallback(std::uint8_t set, ConeFallback f) noexcept {
  return (set & static_cast<std::uint8_t>(f)) != 0;
}

/// Which parameters on d the construction starts from.
enum class ConeSpacing {
  /// t_k and T_k both equally spaced over the interval.
  Uniform,
  /// T_k = T(t_k) from a solved reparameterization.
  Paired,
  /// Caller-supplied parameter lists.
  Explicit,
};

struct ConeRuling {
  std::size_t k = 0;
  double t = 0.0;
  double T = 0.0;
  Vec3 c;
  /// Cone vertex a_k; only meaningful when has_vertex.
  Vec3 vertex;
  bool has_vertex = false;
  Vec3 direction;
  /// Original curve point d(T_k) and the modified endpoint.
  Vec3 d_original;
  Vec3 d_new;
  Vec3 beta_point;
  Vec3 beta_normal;
  std::uint8_t fallbacks = 0;
};

struct MulticonicRepair {
  double t_start = 0.0;
  double t_end = 0.0;
  double T_start = 0.0;
  double T_end = 0.0;
  std::size_t r = 0;
  ConeSpacing spacing = ConeSpacing::Uniform;
  /// r + 1 rulings; index 0 is the unchanged ruling at t_start.
  std::vector<ConeRuling> rulings;
  /// d_new of every ruling, the polyline replacing d over the interval.
  std::vector<Vec3> replaced_boundary;
  /// |d_new_r - d(T_end)|; the strip is not forced back onto d.
  double closure_gap = 0.0;
};

/// The construction over explicit parameter lists of equal length >= 3.
MulticonicRepair multiconic_repair(CurveRef c, CurveRef d, std::span<const double> t_values,
                                   std::span<const double> T_values, const Tolerances& tol = {});

/// Uniform spacing of both parameters over a regression interval, r >= 2.
MulticonicRepair multiconic_repair(CurveRef c, CurveRef d, const RegressionInterval& interval,
                                   std::size_t r, const Tolerances& tol = {});

/// Uniform t_k on [t_start, t_end] with T_k taken from `reparam`, r >= 2.
MulticonicRepair multiconic_repair_paired(CurveRef c, CurveRef d, const Reparameterization& reparam,
                                          double t_start, double t_end, std::size_t r,
                                          const Tolerances& tol = {});

struct SplicedRuling {
  bool cone = false;
  double t = 0.0;
  double T = 0.0;
  Vec3 from;
  Vec3 vertex;
  bool has_vertex = false;
  Vec3 to;
};

/// Original rulings outside every repaired interval, copied as they are,
/// merged in t order with the cone rulings of the repairs.
std::vector<SplicedRuling> splice_repairs(std::span<const Ruling> original,
                                          std::span<const MulticonicRepair> repairs);

}  // namespace devsurf
