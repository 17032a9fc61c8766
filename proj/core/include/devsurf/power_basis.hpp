#pragma once

#include <span>
#include <vector>

namespace devsurf {

/// Univariate polynomial in the power basis, coefficients in ascending order:
/// coeffs[k] multiplies x^k.
using Coeffs = std::vector<double>;

double horner(std::span<const double> coeffs, double x) noexcept;

/// Value, first and second derivative at x in one pass.
struct PolyJet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};
PolyJet horner_jet(std::span<const double> coeffs, double x) noexcept;

Coeffs derivative(std::span<const double> coeffs);
Coeffs multiply(std::span<const double> a, std::span<const double> b);

/// Index of the highest coefficient with |c| > rel * max|c|, or -1 if none.
int effective_degree(std::span<const double> coeffs, double rel) noexcept;

/// Sum with Neumaier's compensation.
double compensated_sum(std::span<const double> terms) noexcept;

/// Power-basis coefficients of sum_i b_i B_{i,n}(x). Accumulation is
/// compensated, since the alternating binomial sums cancel heavily.
Coeffs bernstein_to_power(std::span<const double> bernstein);

}  // namespace devsurf
