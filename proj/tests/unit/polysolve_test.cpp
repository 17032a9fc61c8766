#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "devsurf/errors.hpp"
#include "devsurf/polysolve.hpp"
#include "devsurf/power_basis.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace devsurf;
using Matrix = std::vector<std::vector<double>>;

namespace {

Matrix mul(const Matrix& a, const Matrix& b) {
  Matrix out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k)
        for (std::size_t l = 0; l < b[k].size(); ++l) {
          if (out.size() <= i + k) out.resize(i + k + 1);
          if (out[i + k].size() <= j + l) out[i + k].resize(j + l + 1, 0.0);
          out[i + k][j + l] += a[i][j] * b[k][l];
        }
  return out;
}

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Coefficients of P(u + a, U + b) from those of P(t, T).
Matrix shift(const Matrix& p, double a, double b) {
  Matrix out(p.size());
  std::size_t cols = 0;
  for (const auto& r : p) cols = std::max(cols, r.size());
  for (auto& r : out) r.assign(cols, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p[i].size(); ++j)
      for (std::size_t k = 0; k <= i; ++k)
        for (std::size_t l = 0; l <= j; ++l)
          out[k][l] += p[i][j] * binom(int(i), int(k)) * std::pow(a, double(i - k)) *
                       binom(int(j), int(l)) * std::pow(b, double(j - l));
  return out;
}

double poly_eval(const Matrix& m, double t, double T) {
  double s = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) s += m[i][j] * std::pow(t, double(i)) * std::pow(T, double(j));
  return s;
}

double distance_to(const BivariatePolynomial& p, const Matrix& expected) {
  return oracle::coefficient_distance(oracle::to_matrix(p), expected);
}

}  // namespace

TEST(DevelopabilityPolynomial, AgreesWithTheDeterminantOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 1; n <= 5; ++n)
    for (int rep = 0; rep < 30; ++rep) {
      const auto a = oracle::random_curve(rng, n, true);
      const auto b = oracle::random_curve(rng, n + (rep % 2), true);
      const RationalBezierCurve c(a.points, a.weights), d(b.points, b.weights);
      const BivariatePolynomial p = developability_polynomial(c, d);
      const double scale = std::max(p.max_abs(), 1e-300);
      for (int k = 0; k < 10; ++k) {
        const double t = unit(rng), T = unit(rng);
        const double expected = oracle::weighted_det(a.points, a.weights, b.points, b.weights, t, T);
        EXPECT_NEAR(p.eval(t, T), expected, 1e-11 * scale) << "n=" << n;
      }
    }
}

TEST(DevelopabilityPolynomial, IndependentOfTheDomainLength) {
  const auto pair = fixtures::rational_cubics();
  const RationalBezierCurve c2(std::vector<Vec3>(pair.c.control_points().begin(), pair.c.control_points().end()),
                               std::vector<double>(pair.c.weights().begin(), pair.c.weights().end()),
                               {3, 7});
  EXPECT_LT(proportionality_error(developability_polynomial(pair.c, pair.d),
                                  developability_polynomial(c2, pair.d)),
            1e-13);
}

TEST(DevelopabilityPolynomial, WeightScalingGivesAProportionalPolynomial) {
  const auto pair = fixtures::rational_cubics();
  EXPECT_LT(proportionality_error(developability_polynomial(pair.c, pair.d),
                                  developability_polynomial(pair.c.with_scaled_weights(5.0),
                                                            pair.d.with_scaled_weights(0.1))),
            1e-13);
}

TEST(DevelopabilityPolynomial, ParallelParabolas) {
  const auto pair = fixtures::parallel_parabolas();
  const BivariatePolynomial p = developability_polynomial(pair.c, pair.d);
  EXPECT_LT(distance_to(p, {{0, 4}, {-12, 8}}), 1e-12);
  EXPECT_EQ(p.deg_T(), 1);
}

TEST(DevelopabilityPolynomial, ParallelCubics) {
  const auto pair = fixtures::parallel_cubics();
  const Matrix expected{{0, -27, 18}, {27, -36, 9}, {0, 27, -18}};
  EXPECT_LT(distance_to(developability_polynomial(pair.c, pair.d), expected), 1e-12);
}

TEST(DevelopabilityPolynomial, FactoredQuarticOfTheBezierDevelopable) {
  const auto pair = fixtures::bezier_developable_cubics();
  Matrix f = mul({{4, 4, 1}}, {{0, 1}, {-1}});                               // (T+2)^2 (T - t)
  f = mul(f, {{-8, -5}, {-17, 16}, {-12, 6}, {6}});                          // ((6t^2+16t-5)T + 6t^3-12t^2-17t-8)
  EXPECT_LT(distance_to(developability_polynomial(pair.c, pair.d), f), 1e-12);
}

TEST(DevelopabilityPolynomial, BumpedQuarticsDerivedIndependently) {
  // Expanding det(c', d', d - c) for the two quartics by hand gives
  // 8 (-22T^3 + 33T^2 - 15T + 4t^3 - 6t^2 + 6t).
  const auto pair = fixtures::bumped_quartics();
  const Matrix expected{{0, -15, 33, -22}, {6}, {-6}, {4}};
  EXPECT_LT(distance_to(developability_polynomial(pair.c, pair.d), expected), 1e-12);
  // The corner rulings and the mirror symmetry of the data are roots.
  EXPECT_NEAR(poly_eval(expected, 0, 0), 0, 1e-15);
  EXPECT_NEAR(poly_eval(expected, 1, 1), 0, 1e-15);
  EXPECT_NEAR(poly_eval(expected, 0.5, 0.5), 0, 1e-15);
}

TEST(DevelopabilityPolynomial, BumpedQuarticsPrintedFormIsNotProportional) {
  // The published polynomial for this pair is not a multiple of the
  // determinant; it does not even vanish at the corner ruling (1, 1).
  const Matrix printed{{0, 120, -264, -176}, {-48}, {48}, {-32}};
  EXPECT_NE(poly_eval(printed, 1, 1), 0.0);
  const auto pair = fixtures::bumped_quartics();
  EXPECT_GT(distance_to(developability_polynomial(pair.c, pair.d), printed), 0.1);
}

TEST(DevelopabilityPolynomial, RationalCubicsQuartic) {
  const auto pair = fixtures::rational_cubics();
  const Matrix expected{{0, -108, -117, 198, -27}, {96, -96, 588, -792, 276},
                        {240, -924, 729, -726, 519}, {-192, 912, -396, 264, -372},
                        {16, -184, -84, 176, 4}};
  EXPECT_LT(distance_to(developability_polynomial(pair.c, pair.d), expected), 1e-12);
}

TEST(DevelopabilityPolynomial, VaseCubicToPrintedPrecision) {
  const auto pair = fixtures::vase();
  const Matrix printed{{-717.57, 19210.01, 10408.24}, {-17870.03, 190.32, -16679.66}, {-10254.48, 16700.06}};
  EXPECT_LT(distance_to(developability_polynomial(pair.c, pair.d), printed), 2e-3);
}

TEST(DevelopabilityPolynomial, SplinePiecesMatchTheLocalQuadratics) {
  const auto pair = fixtures::spline_cubics();
  const auto& cs = pair.c.segments();
  const auto& ds = pair.d.segments();
  // Global-parameter forms of the three piece pairs the branch visits.
  const Matrix p11{{0, 4.5, -2.25}, {-13.5, 63.0 / 4, -27.0 / 4}, {27.0 / 4, -9, 63.0 / 16}};
  const Matrix p12{{9, -13.5, 27.0 / 4}, {-9, 27.0 / 4, -9.0 / 4}, {9.0 / 4, 0, -9.0 / 16}};
  const Matrix p22{{4.5, -13.5, 63.0 / 8}, {0, 27.0 / 4, -4.5}, {-9.0 / 4, 0, 9.0 / 16}};
  EXPECT_LT(distance_to(developability_polynomial(cs[0].curve, ds[0].curve), shift(p11, 0, 0)), 1e-12);
  EXPECT_LT(distance_to(developability_polynomial(cs[0].curve, ds[1].curve), shift(p12, 0, 1)), 1e-12);
  EXPECT_LT(distance_to(developability_polynomial(cs[1].curve, ds[1].curve), shift(p22, 1, 1)), 1e-12);
}

TEST(DevelopabilityPolynomial, CoplanarCurvesGiveZero) {
  const RationalBezierCurve c({{0, 0, 0}, {1, 2, 0}, {3, 1, 0}});
  const RationalBezierCurve d({{0, 1, 0}, {2, 3, 0}, {4, 0, 0}, {5, 1, 0}});
  EXPECT_TRUE(developability_polynomial(c, d).is_zero());
}

TEST(DegreeBounds, RandomRationalPairs) {
  std::mt19937_64 rng(99);
  for (int n : {2, 3, 4}) {
    int violations = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const auto a = oracle::random_curve(rng, n, true), b = oracle::random_curve(rng, n, true);
      const auto p = developability_polynomial(RationalBezierCurve(a.points, a.weights),
                                               RationalBezierCurve(b.points, b.weights));
      violations += p.deg_T() > 2 * n - 2;
    }
    EXPECT_EQ(violations, 0) << "n=" << n;
  }
}

TEST(DegreeBounds, PolynomialCurvesInParallelPlanes) {
  std::mt19937_64 rng(100);
  for (int n : {2, 3, 4}) {
    int violations = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const auto a = oracle::random_curve(rng, n, false, 0.0), b = oracle::random_curve(rng, n, false, 1.3);
      const auto p = developability_polynomial(RationalBezierCurve(a.points), RationalBezierCurve(b.points));
      violations += p.deg_T() > n - 1;
    }
    EXPECT_EQ(violations, 0) << "n=" << n;
  }
}

TEST(BivariatePolynomial, SlicesAgreeWithEvaluation) {
  BivariatePolynomial p(3, 4);
  double v = 0.5;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) p(i, j) = (v = -v * 1.7 + 0.3);
  const Coeffs s = p.slice_at_t(0.4);
  const Coeffs r = p.slice_at_T(-1.2);
  EXPECT_NEAR(horner(s, -1.2), p.eval(0.4, -1.2), 1e-13);
  EXPECT_NEAR(horner(r, 0.4), p.eval(0.4, -1.2), 1e-13);
}

TEST(BivariatePolynomial, TrimDropsNegligibleTerms) {
  BivariatePolynomial p(3, 3);
  p(0, 1) = 1.0;
  p(2, 2) = 1e-15;
  p.trim(1e-12);
  EXPECT_EQ(p.deg_t(), 0);
  EXPECT_EQ(p.deg_T(), 1);
  BivariatePolynomial z(2, 2);
  z.trim(1e-12);
  EXPECT_TRUE(z.is_zero());
}

TEST(BivariatePolynomial, ProportionalityIgnoresScaleAndSign) {
  BivariatePolynomial a(2, 2), b(2, 3);
  a(0, 1) = 4;
  a(1, 0) = -12;
  a(1, 1) = 8;
  b(0, 1) = -1;
  b(1, 0) = 3;
  b(1, 1) = -2;
  EXPECT_LT(proportionality_error(a, b), 1e-15);
  b(0, 2) = 0.1;
  EXPECT_NEAR(proportionality_error(a, b), 1.0 / 30, 1e-12);
}

namespace {

Coeffs from_roots(const std::vector<double>& roots, double lead) {
  Coeffs p{lead};
  for (double r : roots) p = multiply(p, Coeffs{-r, 1.0});
  return p;
}

std::vector<double> values(const std::vector<Root>& roots) {
  std::vector<double> v;
  for (const Root& r : roots) v.push_back(r.value);
  return v;
}

}  // namespace

TEST(RootIsolation, RecoversPlantedRoots) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(-0.2, 1.2);
  for (int deg = 1; deg <= 8; ++deg)
    for (int rep = 0; rep < 40; ++rep) {
      std::vector<double> roots;
      while (static_cast<int>(roots.size()) < deg) {
        const double r = pos(rng);
        if (std::all_of(roots.begin(), roots.end(), [&](double q) { return std::abs(q - r) > 1e-2; }))
          roots.push_back(r);
      }
      std::sort(roots.begin(), roots.end());
      const Coeffs p = from_roots(roots, rep % 2 ? -3.0 : 0.5);
      const auto found = real_roots_in_interval({p, 0.0}, 0.0, 1.0);
      std::vector<double> expected;
      for (double r : roots)
        if (r >= 0.0 && r <= 1.0) expected.push_back(r);
      ASSERT_EQ(found.size(), expected.size()) << "deg " << deg;
      for (std::size_t k = 0; k < found.size(); ++k) {
        // Forward error is bounded by rounding over the slope at the root.
        const double slope = std::abs(horner_jet(p, expected[k]).first);
        EXPECT_NEAR(found[k].value, expected[k], 1e-10 + 1e-14 / slope);
        EXPECT_FALSE(found[k].merged);
      }
    }
}

TEST(RootIsolation, DoubleRootIsReportedOnceAndFlagged) {
  const Coeffs p = from_roots({0.3, 0.3, 0.7}, 1.0);
  const auto found = real_roots_in_interval({p, 0.0}, 0.0, 1.0);
  ASSERT_EQ(found.size(), 2u);
  EXPECT_NEAR(found[0].value, 0.3, 1e-7);
  EXPECT_TRUE(found[0].merged);
  EXPECT_NEAR(found[1].value, 0.7, 1e-12);
  EXPECT_FALSE(found[1].merged);
}

TEST(RootIsolation, RootsAtTheEndsAreIncluded) {
  const auto found = real_roots_in_interval({from_roots({0.0, 0.5, 1.0}, 2.0), 0.0}, 0.0, 1.0);
  EXPECT_EQ(values(found).size(), 3u);
}

TEST(RootIsolation, NoRootsAndZeroPolynomial) {
  EXPECT_TRUE(real_roots_in_interval({{1.0, 0.0, 1.0}, 0.0}, -5, 5).empty());
  try {
    real_roots_in_interval({{0.0, 0.0, 0.0}, 0.0}, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IdenticallyZeroPolynomial);
  }
}

TEST(RootIsolation, CountNeverBelowSignChangesOnADenseGrid) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 200; ++rep) {
    Coeffs p(1 + rep % 7);
    for (double& x : p) x = g(rng);
    int changes = 0;
    double prev = horner(p, 0.0);
    for (int k = 1; k <= 2000; ++k) {
      const double cur = horner(p, k / 2000.0);
      changes += (prev < 0) != (cur < 0) && prev != 0 && cur != 0;
      prev = cur;
    }
    const auto found = real_roots_in_interval({p, 0.0}, 0.0, 1.0);
    EXPECT_GE(static_cast<int>(found.size()), changes);
    for (const Root& r : found) {
      const PolyJet j = horner_jet(p, r.value);
      EXPECT_LE(std::abs(j.value), 1e-9 * (1.0 + std::abs(j.first))) << rep;
    }
  }
}

TEST(SturmSequence, CountsRootsBetweenPoints) {
  const Coeffs p = from_roots({-1.0, 0.25, 0.5, 3.0}, 1.0);
  const auto chain = sturm_sequence(p);
  EXPECT_EQ(sign_variations(chain, 0.0) - sign_variations(chain, 1.0), 2);
  EXPECT_EQ(sign_variations(chain, -2.0) - sign_variations(chain, 4.0), 4);
}

TEST(QuadraticRoots, AgreesWithTheTextbookFormula) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int rep = 0; rep < 500; ++rep) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const auto mine = quadratic_roots(a, b, c, 1e-8);
    const auto ref = oracle::textbook_quadratic(a, b, c);
    if (ref.empty() || std::abs(ref[1] - ref[0]) < 1e-6) continue;
    ASSERT_EQ(mine.size(), 2u);
    EXPECT_NEAR(mine[0].value, ref[0], 1e-9 * (1 + std::abs(ref[0])));
    EXPECT_NEAR(mine[1].value, ref[1], 1e-9 * (1 + std::abs(ref[1])));
  }
}

TEST(QuadraticRoots, CancellationSafe) {
  const auto r = quadratic_roots(1.0, -1e8, 1.0, 1e-8);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].value, 1e-8, 1e-22);
  const auto dbl = quadratic_roots(1.0, -1.0, 0.25, 1e-8);
  ASSERT_EQ(dbl.size(), 1u);
  EXPECT_TRUE(dbl[0].merged);
}
