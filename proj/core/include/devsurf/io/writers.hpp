#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "devsurf/developable.hpp"
#include "devsurf/multiconic.hpp"
#include "devsurf/spline_driver.hpp"

namespace devsurf::io {

/// Shortest round-trip form limited to 12 significant digits, locale
/// independent; "nan"/"inf" for non-finite values and no negative zero.
std::string format_number(double v);

struct SolveTableRow {
  double t;
  double T;
  double Tprime;
  double residual;
  bool monotone_ok;
};

/// Header t,T,Tprime,residual,monotone_ok, one row per sample, then '#'
/// comment lines.
void write_solve_csv(std::ostream& os, std::span<const SolveTableRow> rows,
                     std::span<const std::string> comments);

/// N*M vertex lines in ruling-major order, then the quads with 1-based indices.
void write_obj(std::ostream& os, const QuadMesh& mesh, std::size_t n_rulings, std::size_t n_across);

/// kind,t,T,cx,cy,cz,ax,ay,az,dx,dy,dz rows; the vertex columns are "nan"
/// for untouched rulings and cone steps without a finite vertex.
void write_repair_csv(std::ostream& os, std::span<const SplicedRuling> rulings,
                      std::span<const std::string> comments);

}  // namespace devsurf::io
