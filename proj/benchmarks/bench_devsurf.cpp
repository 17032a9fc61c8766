#include <benchmark/benchmark.h>

#include <vector>

#include "devsurf/developable.hpp"
#include "devsurf/multiconic.hpp"
#include "devsurf/polysolve.hpp"
#include "devsurf/spline_driver.hpp"

using namespace devsurf;

namespace {

RationalBezierCurve rational_c() {
  return RationalBezierCurve({{0, 0, 0}, {1, 0, 0}, {2, 1, 0}, {2, 3, 0}}, {1, 0.5, 1.0 / 3, 1});
}
RationalBezierCurve rational_d() {
  return RationalBezierCurve({{0, 0, 1}, {1.5, 0, 1.5}, {1.5, 1.5, 1.5}, {1.5, 2.5, 1.5}}, {1, 1.0 / 3, 0.25, 1});
}

RationalBezierCurve quartic_c() {
  return RationalBezierCurve({{0, 0, 0}, {1, 1, 0}, {2, 1, 0}, {3, 1, 0}, {4, 0, 0}});
}
RationalBezierCurve quartic_d() {
  return RationalBezierCurve({{0, 0, 1}, {1, 1, 1}, {2, -0.5, 1}, {3, 1, 1}, {4, 0, 1}});
}

const std::vector<double> kKnots{0, 0, 0, 0, 1, 2, 2, 2, 2};

NurbsCurve spline_c() { return NurbsCurve(3, {{0, 0, 0}, {0, 1, 0}, {1, 1.5, 0}, {2, 1, 0}, {3, 0, 0}}, {}, kKnots); }
NurbsCurve spline_d() { return NurbsCurve(3, {{0, 0, 1}, {0, 1.5, 1}, {0.5, 2, 1}, {1, 2, 1}, {2, 1, 1}}, {}, kKnots); }

void BM_DevelopabilityPolynomial(benchmark::State& state) {
  const auto c = rational_c(), d = rational_d();
  for (auto _ : state) benchmark::DoNotOptimize(developability_polynomial(c, d));
}
BENCHMARK(BM_DevelopabilityPolynomial);

void BM_SliceRoots(benchmark::State& state) {
  const BivariatePolynomial p = developability_polynomial(rational_c(), rational_d());
  double t = 0.0;
  for (auto _ : state) {
    t = t < 1.0 ? t + 1e-3 : 0.0;
    const UnivariateSlice slice{p.slice_at_t(t), t};
    benchmark::DoNotOptimize(real_roots_in_interval(slice, 0.0, 1.0));
  }
}
BENCHMARK(BM_SliceRoots);

void BM_SolveRationalCubics(benchmark::State& state) {
  const auto c = rational_c(), d = rational_d();
  SolveOptions o;
  o.n_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_reparameterization(c, d, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SolveRationalCubics)->Arg(201)->Arg(2001);

void BM_SolveSpline(benchmark::State& state) {
  const auto c = spline_c(), d = spline_d();
  for (auto _ : state) benchmark::DoNotOptimize(solve_spline(c, d));
}
BENCHMARK(BM_SolveSpline);

void BM_RuledSurface(benchmark::State& state) {
  const auto c = rational_c(), d = rational_d();
  const SolveResult r = solve_reparameterization(c, d);
  for (auto _ : state) benchmark::DoNotOptimize(build_ruled_surface(c, d, r.reparam, 201, 21));
}
BENCHMARK(BM_RuledSurface);

void BM_MulticonicRepair(benchmark::State& state) {
  const auto c = quartic_c(), d = quartic_d();
  const SolveResult r = solve_reparameterization(c, d);
  for (auto _ : state)
    benchmark::DoNotOptimize(multiconic_repair(c, d, r.regression.intervals.at(0), static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_MulticonicRepair)->Arg(16)->Arg(256);

}  // namespace
BENCHMARK_MAIN();
