#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "devsurf/config.hpp"
#include "devsurf/curves.hpp"
#include "devsurf/power_basis.hpp"

namespace devsurf {

/// p(t, T) = sum_ij coeff(i, j) t^i T^j, dense row-major storage.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  BivariatePolynomial(std::size_t rows_t, std::size_t cols_T);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  /// -1 for the zero polynomial.
  int deg_t() const noexcept;
  int deg_T() const noexcept;
  bool is_zero() const noexcept { return deg_t() < 0; }
  double max_abs() const noexcept;

  double eval(double t, double T) const noexcept;
  /// Coefficients in T of p(t, .).
  Coeffs slice_at_t(double t) const;
  /// Coefficients in t of p(., T).
  Coeffs slice_at_T(double T) const;

  /// Zeroes entries below rel * max|coeff| and drops trailing zero rows and
  /// columns.
  void trim(double rel);
  /// Copy divided by its max-magnitude entry, sign chosen so that entry is +1.
  BivariatePolynomial normalized() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Max coefficient difference after normalizing both inputs to unit max
/// entry, minimized over the overall sign; shapes are zero padded.
double proportionality_error(const BivariatePolynomial& a, const BivariatePolynomial& b);

/// Numerator of det(c'(u), d_dot(U), d(U) - c(u)) over w(u)^2 omega(U)^2, in
/// the local parameters u, U in [0,1] of the two pieces:
///   p(u,U) = w^2 omega^2 det(c', d_dot, d - c).
/// Trimmed with tol.coefficient_trim. The zero polynomial is a valid result.
BivariatePolynomial developability_polynomial(const RationalBezierCurve& c,
                                              const RationalBezierCurve& d,
                                              const Tolerances& tol = {});

struct UnivariateSlice {
  Coeffs coeffs;
  double at = 0.0;
};

struct Root {
  double value = 0.0;
  /// Set when the root stands for a cluster narrower than tol.root_cluster
  /// (a multiple root as far as the solver can tell).
  bool merged = false;
};

/// All distinct real roots in [lo, hi], ascending. Throws
/// IdenticallyZeroPolynomial when every coefficient trims to zero.
std::vector<Root> real_roots_in_interval(const UnivariateSlice& p, double lo, double hi,
                                         const Tolerances& tol = {});

/// Sturm chain p, p', -rem(...), ... of the trimmed polynomial. Each member
/// is scaled to unit max coefficient; the chain stops at the (numerical) gcd.
std::vector<Coeffs> sturm_sequence(std::span<const double> coeffs, double rel_zero = 1e-13);

/// Sign variations of the chain at x (zeros skipped).
int sign_variations(const std::vector<Coeffs>& chain, double x);

/// Real roots of a x^2 + b x + c via the citardauq form, ascending; double
/// roots closer than `cluster` are reported once with merged = true.
std::vector<Root> quadratic_roots(double a, double b, double c, double cluster);

}  // namespace devsurf
