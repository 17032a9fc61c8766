#include "devsurf/polysolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "devsurf/errors.hpp"

namespace devsurf {

BivariatePolynomial::BivariatePolynomial(std::size_t rows_t, std::size_t cols_T)
    : rows_(rows_t), cols_(cols_T), data_(rows_t * cols_T, 0.0) {}

int BivariatePolynomial::deg_t() const noexcept {
  for (std::size_t i = rows_; i-- > 0;)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0.0) return static_cast<int>(i);
  return -1;
}

int BivariatePolynomial::deg_T() const noexcept {
  for (std::size_t j = cols_; j-- > 0;)
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, j) != 0.0) return static_cast<int>(j);
  return -1;
}

double BivariatePolynomial::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double BivariatePolynomial::eval(double t, double T) const noexcept {
  double acc = 0.0;
  for (std::size_t i = rows_; i-- > 0;) {
    double row = 0.0;
    for (std::size_t j = cols_; j-- > 0;) row = row * T + (*this)(i, j);
    acc = acc * t + row;
  }
  return acc;
}

Coeffs BivariatePolynomial::slice_at_t(double t) const {
  Coeffs out(cols_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    double acc = 0.0;
    for (std::size_t i = rows_; i-- > 0;) acc = acc * t + (*this)(i, j);
    out[j] = acc;
  }
  return out;
}

Coeffs BivariatePolynomial::slice_at_T(double T) const {
  Coeffs out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = cols_; j-- > 0;) acc = acc * T + (*this)(i, j);
    out[i] = acc;
  }
  return out;
}

void BivariatePolynomial::trim(double rel) {
  const double cut = rel * max_abs();
  for (double& v : data_)
    if (std::abs(v) <= cut) v = 0.0;
  const std::size_t r = static_cast<std::size_t>(deg_t() + 1);
  const std::size_t c = static_cast<std::size_t>(deg_T() + 1);
  if (r == rows_ && c == cols_) return;
  BivariatePolynomial out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = (*this)(i, j);
  *this = std::move(out);
}

BivariatePolynomial BivariatePolynomial::normalized() const {
  BivariatePolynomial out = *this;
  double best = 0.0;
  for (double v : data_)
    if (std::abs(v) > std::abs(best)) best = v;
  if (best == 0.0) return out;
  for (double& v : out.data_) v /= best;
  return out;
}

double proportionality_error(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  const BivariatePolynomial na = a.normalized();
  const BivariatePolynomial nb = b.normalized();
  const std::size_t rows = std::max(na.rows(), nb.rows());
  const std::size_t cols = std::max(na.cols(), nb.cols());
  auto at = [](const BivariatePolynomial& p, std::size_t i, std::size_t j) {
    return (i < p.rows() && j < p.cols()) ? p(i, j) : 0.0;
  };
  double same = 0.0;
  double flipped = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      same = std::max(same, std::abs(at(na, i, j) - at(nb, i, j)));
      flipped = std::max(flipped, std::abs(at(na, i, j) + at(nb, i, j)));
    }
  }
  return std::min(same, flipped);
}

// ---------------------------------------------------------------------------

namespace {

using VecPoly = std::array<Coeffs, 3>;

Coeffs sub(const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

VecPoly cross(const VecPoly& a, const VecPoly& b) {
  return {sub(multiply(a[1], b[2]), multiply(a[2], b[1])),
          sub(multiply(a[2], b[0]), multiply(a[0], b[2])),
          sub(multiply(a[0], b[1]), multiply(a[1], b[0]))};
}

VecPoly deriv(const VecPoly& a) { return {derivative(a[0]), derivative(a[1]), derivative(a[2])}; }

/// s(x) * a(x) - r(x) * b(x) for scalar s, r and vector a, b.
VecPoly weighted_difference(const Coeffs& s, const VecPoly& a, const Coeffs& r, const VecPoly& b) {
  VecPoly out;
  for (int k = 0; k < 3; ++k) out[k] = sub(multiply(s, a[k]), multiply(r, b[k]));
  return out;
}

void accumulate_outer(BivariatePolynomial& out, const Coeffs& in_t, const Coeffs& in_T,
                      double sign) {
  for (std::size_t i = 0; i < in_t.size(); ++i)
    for (std::size_t j = 0; j < in_T.size(); ++j) out(i, j) += sign * in_t[i] * in_T[j];
}

}  // namespace

BivariatePolynomial developability_polynomial(const RationalBezierCurve& c,
                                              const RationalBezierCurve& d,
                                              const Tolerances& tol) {
  const HomogeneousForm& fc = c.power_form();
  const HomogeneousForm& fd = d.power_form();
  const VecPoly& p = fc.numerator;
  const Coeffs& w = fc.denominator;
  const VecPoly& q = fd.numerator;
  const Coeffs& om = fd.denominator;

  const VecPoly dp = deriv(p);
  const Coeffs dw = derivative(w);
  const VecPoly dq = deriv(q);
  const Coeffs dom = derivative(om);

  // w^2 om^2 det(c', d_dot, d - c) = -[ (p x p') . (om q_dot - om_dot q)
  //                                   + (q x q_dot) . (w p' - w' p) ]
  const VecPoly pxdp = cross(p, dp);
  const VecPoly qxdq = cross(q, dq);
  const VecPoly v_T = weighted_difference(om, dq, dom, q);
  const VecPoly w_t = weighted_difference(w, dp, dw, p);

  std::size_t rows = 0;
  std::size_t cols = 0;
  for (int k = 0; k < 3; ++k) {
    rows = std::max({rows, pxdp[k].size(), w_t[k].size()});
    cols = std::max({cols, v_T[k].size(), qxdq[k].size()});
  }
  BivariatePolynomial out(rows, cols);
  for (int k = 0; k < 3; ++k) {
    accumulate_outer(out, pxdp[k], v_T[k], -1.0);
    accumulate_outer(out, w_t[k], qxdq[k], -1.0);
  }
  out.trim(tol.coefficient_trim);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Coeffs trimmed_normalized(std::span<const double> coeffs, double rel) {
  const int deg = effective_degree(coeffs, rel);
  if (deg < 0) return {};
  Coeffs out(coeffs.begin(), coeffs.begin() + deg + 1);
  double mx = 0.0;
  for (double v : out) mx = std::max(mx, std::abs(v));
  for (double& v : out) {
    if (std::abs(v) <= rel * mx) v = 0.0;
    v /= mx;
  }
  return out;
}

/// Remainder of a / b (deg a >= deg b, b's leading coefficient nonzero).
Coeffs remainder(Coeffs a, const Coeffs& b) {
  const std::size_t db = b.size() - 1;
  for (std::size_t k = a.size(); k-- > db;) {
    const double q = a[k] / b[db];
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= q * b[j];
    a[k] = 0.0;
  }
  a.resize(db);
  return a;
}

double max_abs(const Coeffs& c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

std::vector<Coeffs> sturm_sequence(std::span<const double> coeffs, double rel_zero) {
  std::vector<Coeffs> chain;
  Coeffs p0 = trimmed_normalized(coeffs, rel_zero);
  if (p0.empty()) return chain;
  chain.push_back(p0);
  if (p0.size() == 1) return chain;
  chain.push_back(trimmed_normalized(derivative(p0), rel_zero));
  while (chain.back().size() > 1) {
    const Coeffs& prev = chain[chain.size() - 2];
    const Coeffs& cur = chain.back();
    Coeffs r = remainder(prev, cur);
    // Relative to the operands: the quotient can be large, so the natural
    // size of a "zero" remainder is bounded by |prev| + |q||cur|.
    const double scale = std::max(max_abs(prev), 1.0) * (1.0 + std::abs(prev.back() / cur.back()));
    if (r.empty() || max_abs(r) <= rel_zero * scale) break;
    for (double& v : r) v = -v;
    Coeffs next = trimmed_normalized(r, rel_zero);
    if (next.empty()) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

int sign_variations(const std::vector<Coeffs>& chain, double x) {
  int variations = 0;
  int last = 0;
  for (const Coeffs& p : chain) {
    const double v = horner(p, x);
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

std::vector<Root> quadratic_roots(double a, double b, double c, double cluster) {
  std::vector<Root> out;
  if (a == 0.0) {
    if (b != 0.0) out.push_back({-c / b, false});
    return out;
  }
  const double disc = b * b - 4.0 * a * c;
  const double separation = std::sqrt(std::abs(disc)) / std::abs(a);
  if (separation < cluster) {
    out.push_back({-b / (2.0 * a), true});
    return out;
  }
  if (disc < 0.0) return out;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q / a;
  double r2 = q != 0.0 ? c / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  out.push_back({r1, false});
  out.push_back({r2, false});
  return out;
}

namespace {

class Isolator {
 public:
  Isolator(const Coeffs& p, const Tolerances& tol)
      : p_(p), dp_(derivative(p)), chain_(sturm_sequence(p)), tol_(tol) {}

  void isolate(double a, double b, int count, std::vector<Root>& out) const {
    if (count <= 0) return;
    if (count == 1) {
      out.push_back(refine(a, b));
      return;
    }
    if (b - a < tol_.root_cluster) {
      out.push_back({0.5 * (a + b), true});
      return;
    }
    double m = 0.5 * (a + b);
    if (horner(p_, m) == 0.0) m += 0.25 * (b - a) * 1e-3;
    const int left = variations(a) - variations(m);
    isolate(a, m, left, out);
    isolate(m, b, count - left, out);
  }

  int variations(double x) const { return sign_variations(chain_, x); }

 private:
  Root refine(double a, double b) const {
    double fa = horner(p_, a);
    const double fb = horner(p_, b);
    if (fb == 0.0) return {b, false};
    if ((fa < 0.0) != (fb < 0.0) && fa != 0.0) {
      double x = 0.5 * (a + b);
      for (int it = 0; it < 200; ++it) {
        const double fx = horner(p_, x);
        if (fx == 0.0) return {x, false};
        if ((fx < 0.0) == (fa < 0.0)) {
          a = x;
          fa = fx;
        } else {
          b = x;
        }
        const double dfx = horner(dp_, x);
        double next = dfx != 0.0 ? x - fx / dfx : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        const double step = std::abs(next - x);
        x = next;
        if (step <= tol_.root * std::max(1.0, std::abs(x)) ||
            (b - a) <= tol_.root * std::max(1.0, std::abs(x)))
          break;
      }
      return {x, false};
    }
    // Even multiplicity: no sign change, shrink on the Sturm count instead.
    while (b - a > tol_.root * std::max(1.0, std::abs(a))) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (variations(a) - variations(m) >= 1)
        b = m;
      else
        a = m;
    }
    return {0.5 * (a + b), true};
  }

  Coeffs p_;
  Coeffs dp_;
  std::vector<Coeffs> chain_;
  Tolerances tol_;
};

void polish(const Coeffs& p, Root& r) {
  if (r.merged) return;
  const Coeffs dp = derivative(p);
  for (int it = 0; it < 3; ++it) {
    const double f = horner(p, r.value);
    const double df = horner(dp, r.value);
    if (df == 0.0) return;
    const double next = r.value - f / df;
    if (!(std::abs(horner(p, next)) < std::abs(f))) return;
    r.value = next;
  }
}

}  // namespace

std::vector<Root> real_roots_in_interval(const UnivariateSlice& slice, double lo, double hi,
                                         const Tolerances& tol) {
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "root interval must satisfy lo < hi");
  const Coeffs p = trimmed_normalized(slice.coeffs, tol.coefficient_trim);
  if (p.empty())
    throw Error(ErrorCode::IdenticallyZeroPolynomial, "slice polynomial is identically zero");

  const double slack = 1e-9 * std::max(1.0, hi - lo);
  const double a = lo - slack;
  const double b = hi + slack;
  std::vector<Root> found;
  const std::size_t degree = p.size() - 1;
  if (degree == 0) return {};
  if (degree == 1) {
    found.push_back({-p[0] / p[1], false});
  } else if (degree == 2) {
    found = quadratic_roots(p[2], p[1], p[0], tol.root_cluster);
    for (Root& r : found) polish(p, r);
  } else {
    Isolator iso(p, tol);
    // (a, b] convention of the Sturm count; an exact root at a is added by hand.
    if (horner(p, a) == 0.0) found.push_back({a, false});
    iso.isolate(a, b, iso.variations(a) - iso.variations(b), found);
  }

  std::vector<Root> out;
  for (Root r : found) {
    if (!(r.value >= a && r.value <= b)) continue;
    r.value = std::clamp(r.value, lo, hi);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const Root& x, const Root& y) { return x.value < y.value; });
  std::vector<Root> merged;
  for (const Root& r : out) {
    if (!merged.empty() && r.value - merged.back().value < tol.root_cluster) {
      merged.back().merged = true;
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

}  // namespace devsurf
