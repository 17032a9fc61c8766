#include "devsurf/io/writers.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace devsurf::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace {

void put_vec(std::ostream& os, const Vec3& v) {
  os << ',' << format_number(v.x) << ',' << format_number(v.y) << ',' << format_number(v.z);
}

void put_comments(std::ostream& os, std::span<const std::string> comments) {
  for (const std::string& c : comments) os << "# " << c << '\n';
}

}  // namespace

void write_solve_csv(std::ostream& os, std::span<const SolveTableRow> rows,
                     std::span<const std::string> comments) {
  os << "t,T,Tprime,residual,monotone_ok\n";
  for (const SolveTableRow& r : rows)
    os << format_number(r.t) << ',' << format_number(r.T) << ',' << format_number(r.Tprime) << ','
       << format_number(r.residual) << ',' << (r.monotone_ok ? 1 : 0) << '\n';
  put_comments(os, comments);
}

void write_obj(std::ostream& os, const QuadMesh& mesh, std::size_t n_rulings, std::size_t n_across) {
  os << "# rulings " << n_rulings << " across " << n_across << '\n';
  for (const Vec3& v : mesh.vertices)
    os << "v " << format_number(v.x) << ' ' << format_number(v.y) << ' ' << format_number(v.z)
       << '\n';
  for (const auto& q : mesh.quads)
    os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

void write_repair_csv(std::ostream& os, std::span<const SplicedRuling> rulings,
                      std::span<const std::string> comments) {
  os << "kind,t,T,cx,cy,cz,ax,ay,az,dx,dy,dz\n";
  for (const SplicedRuling& s : rulings) {
    os << (s.cone ? "cone" : "original") << ',' << format_number(s.t) << ',' << format_number(s.T);
    put_vec(os, s.from);
    put_vec(os, s.vertex);
    put_vec(os, s.to);
    os << '\n';
  }
  put_comments(os, comments);
}

}  // namespace devsurf::io
