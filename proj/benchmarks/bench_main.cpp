#include <benchmark/benchmark.h>

#include <cmath>

#include "steklov/steklov.hpp"

using namespace steklov;

static void BM_RealRoots(benchmark::State& state) {
  const Polynomial dp = differentiate(gen_poly(GenSpec{static_cast<int>(state.range(0)), -5, 5, 42}, 0));
  for (auto _ : state) benchmark::DoNotOptimize(real_roots(dp));
}
BENCHMARK(BM_RealRoots)->Arg(4)->Arg(10)->Arg(20);

static void BM_PolyGlobalMin(benchmark::State& state) {
  const Polynomial p = gen_poly(GenSpec{static_cast<int>(state.range(0)), -5, 5, 42}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(poly_global_min(p));
}
BENCHMARK(BM_PolyGlobalMin)->Arg(4)->Arg(10)->Arg(20);

static void BM_RunSteklov(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const ObjectiveFunction obj = ObjectiveFunction::from_polynomial(gen_poly(GenSpec{degree, -5, 5, 42}, 2));
  RunConfig cfg;
  cfg.t0 = T0Map::defaults().lookup(Method::Steklov, degree);
  cfg.record_trajectory = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_steklov(obj, cfg));
}
BENCHMARK(BM_RunSteklov)->Arg(4)->Arg(10)->Arg(20);

static void BM_RunSteklovQuartic(benchmark::State& state) {
  const Polynomial p = *builtin_polynomial("p4_sec61");
  for (auto _ : state) benchmark::DoNotOptimize(run_steklov_quartic(p));
}
BENCHMARK(BM_RunSteklovQuartic);

static void BM_RunQuadratic(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const ObjectiveFunction obj = ObjectiveFunction::from_polynomial(gen_poly(GenSpec{degree, -5, 5, 42}, 3));
  RunConfig cfg;
  cfg.t0 = T0Map::defaults().lookup(Method::Quadratic, degree);
  cfg.record_trajectory = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_quadratic(obj, cfg));
}
BENCHMARK(BM_RunQuadratic)->Arg(4)->Arg(10);

static void BM_IntegrateStiff(benchmark::State& state) {
  IvpProblem p;
  const double lambda = static_cast<double>(state.range(0));
  p.rhs = [lambda](double t, double x) { return RhsValue{lambda * (x - std::cos(t)), 1.0}; };
  p.x_start = std::cos(1.0);
  p.keep_samples = false;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(p));
}
BENCHMARK(BM_IntegrateStiff)->Arg(1)->Arg(1000)->Arg(1000000);

static void BM_IntegrateAdaptive(benchmark::State& state) {
  const ObjectiveFunction f = builtin("quad_sine");
  for (auto _ : state) benchmark::DoNotOptimize(integrate_adaptive(f.f, -3.0, 4.0, 1e-12, 1e-300, 20000));
}
BENCHMARK(BM_IntegrateAdaptive);

static void BM_SteklovPartials(benchmark::State& state) {
  const ObjectiveFunction f = builtin(state.range(0) == 0 ? "p10_sec63" : "quad_sine");
  for (auto _ : state) benchmark::DoNotOptimize(steklov_partials(f, 0.3, 2.0));
}
BENCHMARK(BM_SteklovPartials)->Arg(0)->Arg(1);
BENCHMARK_MAIN();
