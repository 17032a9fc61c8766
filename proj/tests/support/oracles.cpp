#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double bernstein(int n, int i, double u) {
  if (i < 0 || i > n) return 0.0;
  return binom(n, i) * std::pow(u, i) * std::pow(1.0 - u, n - i);
}

double dbernstein(int n, int i, double u) {
  return n * (bernstein(n - 1, i - 1, u) - bernstein(n - 1, i, u));
}

double ddbernstein(int n, int i, double u) {
  return n * (n - 1) *
         (bernstein(n - 2, i - 2, u) - 2.0 * bernstein(n - 2, i - 1, u) + bernstein(n - 2, i, u));
}

double cox_de_boor(const std::vector<double>& k, int i, int p, double t) {
  if (p == 0) {
    const bool last = t == k.back() && k[i] < k[i + 1] && k[i + 1] == k.back();
    return ((k[i] <= t && t < k[i + 1]) || last) ? 1.0 : 0.0;
  }
  double v = 0.0;
  if (k[i + p] > k[i]) v += (t - k[i]) / (k[i + p] - k[i]) * cox_de_boor(k, i, p - 1, t);
  if (k[i + p + 1] > k[i + 1])
    v += (k[i + p + 1] - t) / (k[i + p + 1] - k[i + 1]) * cox_de_boor(k, i + 1, p - 1, t);
  return v;
}

}  // namespace

Jet bezier_jet(const std::vector<Vec3>& pts, const std::vector<double>& w, double t, double lo,
               double hi) {
  const int n = static_cast<int>(pts.size()) - 1;
  const double s = 1.0 / (hi - lo);
  const double u = (t - lo) * s;
  Vec3 N, N1, N2;
  double W = 0, W1 = 0, W2 = 0;
  for (int i = 0; i <= n; ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    const double b = bernstein(n, i, u), b1 = dbernstein(n, i, u) * s,
                 b2 = ddbernstein(n, i, u) * s * s;
    N = N + (b * wi) * pts[i];
    N1 = N1 + (b1 * wi) * pts[i];
    N2 = N2 + (b2 * wi) * pts[i];
    W += b * wi;
    W1 += b1 * wi;
    W2 += b2 * wi;
  }
  Jet j;
  j.p = N / W;
  j.d1 = (N1 - W1 * j.p) / W;
  j.d2 = (N2 - 2.0 * W1 * j.d1 - W2 * j.p) / W;
  return j;
}

Vec3 nurbs_point(int degree, const std::vector<Vec3>& pts, const std::vector<double>& w,
                 const std::vector<double>& knots, double t) {
  Vec3 N;
  double W = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double b = cox_de_boor(knots, static_cast<int>(i), degree, t) * (w.empty() ? 1.0 : w[i]);
    N = N + b * pts[i];
    W += b;
  }
  return N / W;
}

double det_along(const std::function<Jet(double)>& c, const std::function<Jet(double)>& d,
                 double t, double T) {
  const Jet a = c(t);
  const Jet b = d(T);
  return dot(a.d1, cross(b.d1, b.p - a.p));
}

double weighted_det(const std::vector<Vec3>& cp, const std::vector<double>& cw,
                    const std::vector<Vec3>& dp, const std::vector<double>& dw, double t,
                    double T) {
  auto weight = [](const std::vector<double>& w, std::size_t n, double u) {
    double W = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      W += bernstein(static_cast<int>(n) - 1, static_cast<int>(i), u) * (w.empty() ? 1.0 : w[i]);
    return W;
  };
  const double Wc = weight(cw, cp.size(), t);
  const double Wd = weight(dw, dp.size(), T);
  const double det = det_along([&](double x) { return bezier_jet(cp, cw, x); },
                               [&](double x) { return bezier_jet(dp, dw, x); }, t, T);
  return Wc * Wc * Wd * Wd * det;
}

double coefficient_distance(const std::vector<std::vector<double>>& a,
                            const std::vector<std::vector<double>>& b) {
  std::size_t rows = std::max(a.size(), b.size());
  std::size_t cols = 0;
  for (const auto& r : a) cols = std::max(cols, r.size());
  for (const auto& r : b) cols = std::max(cols, r.size());
  auto at = [](const std::vector<std::vector<double>>& m, std::size_t i, std::size_t j) {
    return i < m.size() && j < m[i].size() ? m[i][j] : 0.0;
  };
  auto peak = [&](const std::vector<std::vector<double>>& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) best = std::max(best, std::abs(at(m, i, j)));
    return best;
  };
  const double pa = peak(a), pb = peak(b);
  if (pa == 0.0 || pb == 0.0) return pa == pb ? 0.0 : 1.0;
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = at(a, i, j) / pa, y = at(b, i, j) / pb;
      plus = std::max(plus, std::abs(x - y));
      minus = std::max(minus, std::abs(x + y));
    }
  return std::min(plus, minus);
}

std::vector<std::vector<double>> to_matrix(const devsurf::BivariatePolynomial& p) {
  std::vector<std::vector<double>> m(p.rows(), std::vector<double>(p.cols()));
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) m[i][j] = p(i, j);
  return m;
}

double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
  // Minimize over a fine grid of the first parameter, with the exact
  // projection onto the second segment, then polish by ternary search.
  auto dist_to_b = [&](const Vec3& p) {
    const Vec3 e = b1 - b0;
    double s = dot(p - b0, e) / dot(e, e);
    s = std::clamp(s, 0.0, 1.0);
    return norm(p - (b0 + s * e));
  };
  auto f = [&](double u) { return dist_to_b(a0 + u * (a1 - a0)); };
  constexpr int kGrid = 200;
  int best = 0;
  for (int i = 1; i <= kGrid; ++i)
    if (f(static_cast<double>(i) / kGrid) < f(static_cast<double>(best) / kGrid)) best = i;
  double lo = std::max(0.0, (best - 1.0) / kGrid), hi = std::min(1.0, (best + 1.0) / kGrid);
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2))
      hi = m2;
    else
      lo = m1;
  }
  return std::min({f(0.5 * (lo + hi)), f(0.0), f(1.0)});
}

std::vector<double> textbook_quadratic(double a, double b, double c) {
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return {};
  const double r = std::sqrt(disc);
  std::vector<double> out{(-b - r) / (2 * a), (-b + r) / (2 * a)};
  std::sort(out.begin(), out.end());
  return out;
}

RandomCurve random_curve(std::mt19937_64& rng, int degree, bool rational,
                         std::optional<double> plane_z) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  RandomCurve c;
  for (int i = 0; i <= degree; ++i) {
    Vec3 p{coord(rng), coord(rng), coord(rng)};
    if (plane_z) p.z = *plane_z;
    c.points.push_back(p);
    c.weights.push_back(rational ? weight(rng) : 1.0);
  }
  return c;
}

}  // namespace oracle
