#include "devsurf/power_basis.hpp"

#include <algorithm>
#include <cmath>

namespace devsurf {

double horner(std::span<const double> coeffs, double x) noexcept {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PolyJet horner_jet(std::span<const double> coeffs, double x) noexcept {
  PolyJet j;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    j.second = j.second * x + 2.0 * j.first;
    j.first = j.first * x + j.value;
    j.value = j.value * x + *it;
  }
  return j;
}

Coeffs derivative(std::span<const double> coeffs) {
  if (coeffs.size() <= 1) return {0.0};
  Coeffs out(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs[k];
  return out;
}

Coeffs multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

int effective_degree(std::span<const double> coeffs, double rel) noexcept {
  double mx = 0.0;
  for (double c : coeffs) mx = std::max(mx, std::abs(c));
  if (!(mx > 0.0)) return -1;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    if (std::abs(coeffs[k]) > rel * mx) return k;
  return -1;
}

double compensated_sum(std::span<const double> terms) noexcept {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : terms) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace

Coeffs bernstein_to_power(std::span<const double> bernstein) {
  const int n = static_cast<int>(bernstein.size()) - 1;
  if (n < 0) return {};
  Coeffs out(bernstein.size());
  std::vector<double> terms;
  for (int j = 0; j <= n; ++j) {
    terms.clear();
    for (int i = 0; i <= j; ++i) {
      const double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
      terms.push_back(sign * binomial(j, i) * bernstein[i]);
    }
    out[j] = binomial(n, j) * compensated_sum(terms);
  }
  return out;
}

}  // namespace devsurf
