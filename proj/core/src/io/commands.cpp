#include "devsurf/io/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "devsurf/errors.hpp"
#include "devsurf/io/document.hpp"
#include "devsurf/io/writers.hpp"
#include "devsurf/multiconic.hpp"
#include "devsurf/spline_driver.hpp"

namespace devsurf::io {

namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kDefaultSubdivisions = 16;

struct Problem {
  CurvePairDocument doc;
  char master;
  NurbsCurve c;
  NurbsCurve d;
  SolveOptions solve;
  std::size_t subdivisions;

  Problem(CurvePairDocument document, const CommandOptions& opt)
      : doc(std::move(document)),
        master(opt.master.value_or(doc.options.master.value_or('c'))),
        c(to_nurbs(master == 'd' ? doc.d : doc.c)),
        d(to_nurbs(master == 'd' ? doc.c : doc.d)),
        subdivisions(opt.subdivisions.value_or(doc.options.multiconic_r.value_or(kDefaultSubdivisions))) {
    solve.n_samples = opt.samples.value_or(doc.options.samples.value_or(solve.n_samples));
    solve.allow_invalid_corners = doc.options.allow_invalid_corners.value_or(false);
    solve.threads = opt.threads;
    if (opt.tol_coplanar)
      solve.tol.coplanar = *opt.tol_coplanar;
    else if (doc.options.tol_coplanar)
      solve.tol.coplanar = *doc.options.tol_coplanar;
  }
};

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NoRealRootOnSlice:
    case ErrorCode::SingularDenominator:
    case ErrorCode::DegenerateRuling:
    case ErrorCode::DegenerateNormal:
    case ErrorCode::EventLocalizationFailure:
    case ErrorCode::ParallelLinePlane:
    case ErrorCode::DegenerateOsculatingPlane:
      return kExitRegression;
    default:
      return kExitInput;
  }
}

/// Loads the document and runs `body`, turning every failure into a
/// diagnostic and an exit code.
int guarded(const CommandOptions& opt, std::ostream& err,
            const std::function<int(Problem&)>& body) {
  std::optional<Problem> problem;
  try {
    if (opt.master && *opt.master != 'c' && *opt.master != 'd') {
      err << "error: --master must be c or d\n";
      return kExitInput;
    }
    problem.emplace(load_document(opt.input), opt);
  } catch (const DocumentError& e) {
    err << opt.input << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << opt.input << ": " << e.what() << '\n';
    return kExitInput;
  }
  try {
    return body(*problem);
  } catch (const Error& e) {
    err << opt.input << ": " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_for(e);
  }
}

/// Writes through `emit` to --out when given, else to `out`.
bool emit_to(const CommandOptions& opt, std::ostream& out, std::ostream& err,
             const std::function<void(std::ostream&)>& emit) {
  if (opt.out_path.empty()) {
    emit(out);
    return true;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << opt.out_path << '\n';
    return false;
  }
  emit(file);
  return static_cast<bool>(file);
}

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

std::string describe_end(bool coplanar, double residual, bool same_side) {
  std::ostringstream s;
  s << "coplanar " << (coplanar ? "yes" : "no") << " (residual " << format_number(residual)
    << "), same side " << (same_side ? "yes" : "no");
  return s.str();
}

ordered_json corners_json(const CornerReport& r) {
  ordered_json j;
  j["ok"] = r.ok();
  j["start"] = {{"coplanar", r.coplanar_start},
                {"residual", r.residual_start},
                {"same_side", r.same_side_start},
                {"ok", r.start_ok()}};
  j["end"] = {{"coplanar", r.coplanar_end},
              {"residual", r.residual_end},
              {"same_side", r.same_side_end},
              {"ok", r.end_ok()}};
  return j;
}

void print_corners(std::ostream& os, const CornerReport& r) {
  os << "start: " << describe_end(r.coplanar_start, r.residual_start, r.same_side_start) << '\n';
  os << "end: " << describe_end(r.coplanar_end, r.residual_end, r.same_side_end) << '\n';
  os << "corners: " << (r.ok() ? "ok" : "fail") << '\n';
}

bool corners_block(const Problem& p, const CornerReport& corners, std::ostream& err) {
  if (corners.ok() || p.solve.allow_invalid_corners) return false;
  err << p.doc.name << (p.doc.name.empty() ? "" : ": ")
      << "corner conditions fail (set options.allow_invalid_corners to solve anyway)\n";
  print_corners(err, corners);
  return true;
}

bool inside_regression(const RegressionReport& reg, double t) {
  for (const RegressionInterval& iv : reg.intervals)
    if (t > iv.t_start && t < iv.t_end) return true;
  return false;
}

std::string interval_text(const RegressionInterval& iv) {
  std::ostringstream s;
  s << "t=[" << format_number(iv.t_start) << "," << format_number(iv.t_end) << "] T=["
    << format_number(iv.T_start) << "," << format_number(iv.T_end)
    << "] causes=" << cause_string(iv.causes) << (iv.bounded ? "" : " unbounded");
  return s.str();
}

std::string knots_text(std::span<const double> knots) {
  std::string s;
  for (double k : knots) s += " " + format_number(k);
  return s;
}

/// Residual of the ruling at one sample; NaN for unsolved samples and 0 for
/// a zero-length ruling, where the residual is defined to vanish.
double sample_residual(const Problem& p, const Sample& s) {
  if (!s.solved) return kNaN;
  try {
    return make_ruling(p.c, p.d, s.t, s.T, p.solve.tol).residual;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateRuling) return 0.0;
    throw;
  }
}

struct Solved {
  PiecewiseReparameterization spline;
  std::vector<double> residuals;
};

Solved solve(const Problem& p) {
  Solved s{solve_spline(p.c, p.d, p.solve), {}};
  for (const Sample& smp : s.spline.flattened.samples) s.residuals.push_back(sample_residual(p, smp));
  return s;
}

std::vector<std::string> solve_comments(const Problem& p, const Solved& s) {
  std::vector<std::string> out;
  if (p.master == 'd') out.push_back("master d: t is the parameter of the curve given as d");
  if (s.spline.flattened.identically_zero)
    out.push_back("warning: identically zero developability polynomial; T(t) is the affine map of t");
  for (const RegressionInterval& iv : s.spline.regression.intervals)
    out.push_back("regression " + interval_text(iv));
  for (const KnotEvent& e : s.spline.events)
    out.push_back("event t=" + format_number(e.t) + " T=" + format_number(e.T) +
                  " knot=" + to_string(e.owner));
  if (!s.spline.events.empty()) {
    out.push_back("refined_knots_c" + knots_text(s.spline.refined_knots_c));
    out.push_back("refined_knots_d" + knots_text(s.spline.refined_knots_d));
  }
  return out;
}

void report_regression(std::ostream& err, const RegressionReport& reg) {
  err << "regression found; no monotone branch over the whole domain"
      << " (pass --allow-regression to emit anyway)\n";
  for (const RegressionInterval& iv : reg.intervals) err << "  " << interval_text(iv) << '\n';
}

void warn_zero(std::ostream& err, const Solved& s) {
  if (s.spline.flattened.identically_zero)
    err << "warning: IdenticallyZeroPolynomial: the curves are coplanar; T(t) is the affine map\n";
}

}  // namespace

int run_check(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(opt, err, [&](Problem& p) {
    const CornerReport corners = check_corner_conditions(p.c, p.d, p.solve.tol);
    print_corners(out, corners);
    if (!opt.out_path.empty()) {
      ordered_json j;
      j["corners"] = corners_json(corners);
      if (!emit_to(opt, out, err, [&](std::ostream& os) { os << j.dump(2) << '\n'; }))
        return static_cast<int>(kExitInput);
    }
    return static_cast<int>(corners.ok() ? kExitOk : kExitCorners);
  });
}

int run_solve(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(opt, err, [&](Problem& p) {
    const CornerReport corners = check_corner_conditions(p.c, p.d, p.solve.tol);
    if (corners_block(p, corners, err)) return static_cast<int>(kExitCorners);
    const Solved s = solve(p);
    warn_zero(err, s);
    if (!s.spline.regression.empty() && !opt.allow_regression) {
      report_regression(err, s.spline.regression);
      return static_cast<int>(kExitRegression);
    }
    std::vector<SolveTableRow> rows;
    const auto& samples = s.spline.flattened.samples;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Sample& smp = samples[i];
      rows.push_back({smp.t, smp.solved ? smp.T : kNaN, smp.solved ? smp.Tprime : kNaN,
                      s.residuals[i],
                      smp.solved && !inside_regression(s.spline.regression, smp.t)});
    }
    const std::vector<std::string> comments = solve_comments(p, s);
    if (!emit_to(opt, out, err, [&](std::ostream& os) { write_solve_csv(os, rows, comments); }))
      return static_cast<int>(kExitInput);
    return static_cast<int>(kExitOk);
  });
}

int run_mesh(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(opt, err, [&](Problem& p) {
    const CornerReport corners = check_corner_conditions(p.c, p.d, p.solve.tol);
    if (corners_block(p, corners, err)) return static_cast<int>(kExitCorners);
    const Solved s = solve(p);
    warn_zero(err, s);
    if (!s.spline.regression.empty() && !opt.allow_regression) {
      report_regression(err, s.spline.regression);
      return static_cast<int>(kExitRegression);
    }
    const RuledSurface surface =
        build_ruled_surface(p.c, p.d, s.spline.flattened, opt.rulings, opt.across, p.solve);
    if (!emit_to(opt, out, err, [&](std::ostream& os) {
          write_obj(os, surface.mesh, opt.rulings, opt.across);
        }))
      return static_cast<int>(kExitInput);
    return static_cast<int>(kExitOk);
  });
}

int run_repair(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(opt, err, [&](Problem& p) {
    const CornerReport corners = check_corner_conditions(p.c, p.d, p.solve.tol);
    if (corners_block(p, corners, err)) return static_cast<int>(kExitCorners);
    const Solved s = solve(p);
    if (s.spline.regression.empty()) {
      err << "no regression interval found; nothing to repair\n";
      return static_cast<int>(kExitNothingToRepair);
    }
    std::vector<MulticonicRepair> repairs;
    std::vector<std::string> comments;
    for (const RegressionInterval& iv : s.spline.regression.intervals) {
      repairs.push_back(multiconic_repair(p.c, p.d, iv, p.subdivisions, p.solve.tol));
      const MulticonicRepair& rp = repairs.back();
      std::size_t fallbacks = 0;
      for (const ConeRuling& cr : rp.rulings) fallbacks += cr.fallbacks != 0 ? 1 : 0;
      comments.push_back("repair t=[" + format_number(rp.t_start) + "," + format_number(rp.t_end) +
                         "] T=[" + format_number(rp.T_start) + "," + format_number(rp.T_end) +
                         "] r=" + std::to_string(rp.r) + " closure_gap=" +
                         format_number(rp.closure_gap) +
                         " fallback_steps=" + std::to_string(fallbacks));
    }
    std::vector<Ruling> original;
    const auto& samples = s.spline.flattened.samples;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Sample& smp = samples[i];
      if (!smp.solved) continue;
      Ruling rl;
      rl.t = smp.t;
      rl.T = smp.T;
      rl.from = p.c.eval(smp.t);
      rl.to = p.d.eval(smp.T);
      rl.residual = s.residuals[i];
      original.push_back(rl);
    }
    const std::vector<SplicedRuling> spliced = splice_repairs(original, repairs);
    if (!emit_to(opt, out, err, [&](std::ostream& os) { write_repair_csv(os, spliced, comments); }))
      return static_cast<int>(kExitInput);
    return static_cast<int>(kExitOk);
  });
}

int run_report(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(opt, err, [&](Problem& p) {
    ordered_json j;
    j["input"] = opt.input;
    if (!p.doc.name.empty()) j["name"] = p.doc.name;
    j["master"] = std::string(1, p.master);
    const CornerReport corners = check_corner_conditions(p.c, p.d, p.solve.tol);
    j["corners"] = corners_json(corners);
    int code = kExitOk;
    if (corners_block(p, corners, err)) {
      code = kExitCorners;
    } else {
      const Solved s = solve(p);
      warn_zero(err, s);
      const Reparameterization& r = s.spline.flattened;
      j["monotone"] = s.spline.regression.empty();
      j["identically_zero"] = r.identically_zero;
      j["anchored"] = {{"start", r.anchored_start}, {"end", r.anchored_end}};

      ordered_json reg = ordered_json::array();
      for (const RegressionInterval& iv : s.spline.regression.intervals)
        reg.push_back({{"t_start", iv.t_start},
                       {"t_end", iv.t_end},
                       {"T_start", num(iv.T_start)},
                       {"T_end", num(iv.T_end)},
                       {"causes", cause_string(iv.causes)},
                       {"bounded", iv.bounded}});
      j["regression"] = reg;

      ordered_json folds = ordered_json::array();
      for (const FoldEvent& f : r.folds)
        folds.push_back({{"t_start", f.t_start}, {"t_end", f.t_end}, {"T_start", f.T_start},
                         {"T_end", f.T_end}, {"sample_index", f.sample_index}});
      j["folds"] = folds;
      j["branch_jumps"] = r.branch_jumps;

      double max_res = 0.0;
      double sum_res = 0.0;
      std::size_t n_res = 0;
      for (double v : s.residuals)
        if (std::isfinite(v)) {
          max_res = std::max(max_res, v);
          sum_res += v;
          ++n_res;
        }
      j["residual"] = {{"max", max_res}, {"mean", n_res ? sum_res / static_cast<double>(n_res) : 0.0},
                       {"solved_samples", n_res}};

      ordered_json events = ordered_json::array();
      const std::vector<EventContinuity> cont = continuity_report(s.spline, p.c, p.d, p.solve.tol);
      for (const EventContinuity& ec : cont)
        events.push_back({{"t", ec.event.t},
                          {"T", ec.event.T},
                          {"knot", to_string(ec.event.owner)},
                          {"delta_T", ec.delta_T()},
                          {"delta_Tprime", ec.delta_Tprime()}});
      j["events"] = events;
      j["refined_knots"] = {{"c", s.spline.refined_knots_c}, {"d", s.spline.refined_knots_d}};

      ordered_json table = ordered_json::array();
      for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const Sample& smp = r.samples[i];
        table.push_back({{"t", smp.t},
                         {"T", num(smp.solved ? smp.T : kNaN)},
                         {"Tprime", num(smp.solved ? smp.Tprime : kNaN)},
                         {"residual", num(s.residuals[i])},
                         {"monotone_ok", smp.solved && !inside_regression(s.spline.regression, smp.t)}});
      }
      j["samples"] = table;
      if (!s.spline.regression.empty() && !opt.allow_regression) code = kExitRegression;
    }
    if (!emit_to(opt, out, err, [&](std::ostream& os) { os << j.dump(2) << '\n'; }))
      return static_cast<int>(kExitInput);
    return code;
  });
}

}  // namespace devsurf::io
