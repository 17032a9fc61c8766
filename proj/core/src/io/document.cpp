#include "devsurf/io/document.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "devsurf/errors.hpp"

namespace devsurf::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw DocumentError("field " + field + ": " + message, 0, field);
}

int line_of_offset(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  int line = 1;
  for (std::size_t i = 0; i < byte; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
  }
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "expected a finite number");
  return x;
}

std::size_t count(const json& v, const std::string& field, std::size_t minimum) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum))
    fail(field, "expected an integer >= " + std::to_string(minimum));
  return static_cast<std::size_t>(v.get<long long>());
}

std::vector<double> number_array(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

CurveSpec parse_curve(const json& obj, const std::string& name) {
  if (!obj.is_object()) fail(name, "expected an object");
  reject_unknown(obj, name, {"kind", "degree", "control_points", "weights", "knots", "interval"});
  CurveSpec spec;

  if (!obj.contains("kind")) fail(name + ".kind", "missing");
  const json& kind = obj["kind"];
  if (kind == "bezier")
    spec.kind = CurveKind::Bezier;
  else if (kind == "nurbs")
    spec.kind = CurveKind::Nurbs;
  else
    fail(name + ".kind", "expected \"bezier\" or \"nurbs\"");

  if (!obj.contains("degree")) fail(name + ".degree", "missing");
  spec.degree = static_cast<int>(count(obj["degree"], name + ".degree", 1));
  if (spec.degree > kMaxDegree)
    fail(name + ".degree", "at most " + std::to_string(kMaxDegree) + " is supported");

  if (!obj.contains("control_points")) fail(name + ".control_points", "missing");
  const json& cps = obj["control_points"];
  const std::string cp_field = name + ".control_points";
  if (!cps.is_array()) fail(cp_field, "expected an array of [x, y, z]");
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const std::string f = cp_field + "[" + std::to_string(i) + "]";
    const std::vector<double> xyz = number_array(cps[i], f);
    if (xyz.size() != 3) fail(f, "expected three coordinates");
    spec.control_points.push_back({xyz[0], xyz[1], xyz[2]});
  }
  const std::size_t n = spec.control_points.size();
  const std::size_t p = static_cast<std::size_t>(spec.degree);
  if (spec.kind == CurveKind::Bezier && n != p + 1)
    fail(cp_field, "a degree " + std::to_string(p) + " Bezier curve needs " +
                       std::to_string(p + 1) + " control points");
  if (spec.kind == CurveKind::Nurbs && n < p + 1)
    fail(cp_field, "needs at least " + std::to_string(p + 1) + " control points");

  if (obj.contains("weights")) {
    spec.weights = number_array(obj["weights"], name + ".weights");
    if (spec.weights.size() != n) fail(name + ".weights", "needs one weight per control point");
    for (std::size_t i = 0; i < n; ++i)
      if (!(spec.weights[i] > 0.0))
        fail(name + ".weights[" + std::to_string(i) + "]", "weights must be positive");
  }

  if (spec.kind == CurveKind::Nurbs) {
    if (!obj.contains("knots")) fail(name + ".knots", "required for nurbs curves");
    if (obj.contains("interval")) fail(name + ".interval", "only for bezier curves");
    const std::vector<double> knots = number_array(obj["knots"], name + ".knots");
    for (std::size_t i = 1; i < knots.size(); ++i)
      if (knots[i] < knots[i - 1])
        fail(name + ".knots[" + std::to_string(i) + "]", "knots must be non-decreasing");
    try {
      spec.knots = expand_knot_vector(knots, spec.degree, n);
    } catch (const Error& e) {
      fail(name + ".knots", e.what());
    }
  } else {
    if (obj.contains("knots")) fail(name + ".knots", "only for nurbs curves");
    if (obj.contains("interval")) {
      const std::vector<double> iv = number_array(obj["interval"], name + ".interval");
      if (iv.size() != 2 || !(iv[0] < iv[1])) fail(name + ".interval", "expected [a, b] with a < b");
      spec.interval = {iv[0], iv[1]};
    }
  }

  try {
    (void)to_nurbs(spec);
  } catch (const Error& e) {
    fail(name, e.what());
  }
  return spec;
}

DocumentOptions parse_options(const json& obj) {
  if (!obj.is_object()) fail("options", "expected an object");
  reject_unknown(obj, "options",
                 {"samples", "tol_coplanar", "master", "allow_invalid_corners", "multiconic_r"});
  DocumentOptions o;
  if (obj.contains("samples")) o.samples = count(obj["samples"], "options.samples", 2);
  if (obj.contains("tol_coplanar")) {
    const double v = number(obj["tol_coplanar"], "options.tol_coplanar");
    if (!(v > 0.0)) fail("options.tol_coplanar", "must be positive");
    o.tol_coplanar = v;
  }
  if (obj.contains("master")) {
    const json& m = obj["master"];
    if (m == "c")
      o.master = 'c';
    else if (m == "d")
      o.master = 'd';
    else
      fail("options.master", "expected \"c\" or \"d\"");
  }
  if (obj.contains("allow_invalid_corners")) {
    if (!obj["allow_invalid_corners"].is_boolean())
      fail("options.allow_invalid_corners", "expected true or false");
    o.allow_invalid_corners = obj["allow_invalid_corners"].get<bool>();
  }
  if (obj.contains("multiconic_r"))
    o.multiconic_r = count(obj["multiconic_r"], "options.multiconic_r", 2);
  return o;
}

}  // namespace

CurvePairDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const int line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto pos = msg.find(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw DocumentError("line " + std::to_string(line) + ": " + msg, line, "");
  }
  if (!root.is_object()) fail("(document)", "expected an object with keys c and d");
  reject_unknown(root, "", {"name", "description", "c", "d", "options"});

  CurvePairDocument doc;
  if (root.contains("name")) {
    if (!root["name"].is_string()) fail("name", "expected a string");
    doc.name = root["name"].get<std::string>();
  }
  if (root.contains("description") && !root["description"].is_string())
    fail("description", "expected a string");
  if (!root.contains("c")) fail("c", "missing");
  if (!root.contains("d")) fail("d", "missing");
  doc.c = parse_curve(root["c"], "c");
  doc.d = parse_curve(root["d"], "d");
  if (root.contains("options")) doc.options = parse_options(root["options"]);
  return doc;
}

CurvePairDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open " + path, 0, "");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

NurbsCurve to_nurbs(const CurveSpec& spec) {
  if (spec.kind == CurveKind::Bezier)
    return NurbsCurve::from_bezier(
        RationalBezierCurve(spec.control_points, spec.weights, spec.interval));
  std::vector<double> w = spec.weights;
  if (w.empty()) w.assign(spec.control_points.size(), 1.0);
  return NurbsCurve(spec.degree, spec.control_points, std::move(w), spec.knots);
}

}  // namespace devsurf::io
