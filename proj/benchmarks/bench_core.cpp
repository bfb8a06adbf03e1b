#include "covfun/borsuk.hpp"
#include "covfun/constructions.hpp"
#include "covfun/hull.hpp"
#include "covfun/sampling.hpp"

#include <benchmark/benchmark.h>

#include <limits>

using namespace covfun;

static void BM_HullSphere(benchmark::State& state) {
  const Points pts = direction_grid(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(convex_hull(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HullSphere)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_VerifyOctahedron(benchmark::State& state) {
  const ConvexBody K1 = ConvexBody::lp_ball(1, 3);
  CoverConfig cfg = lpball_cover_thm2(1.0);
  cfg.r = 2.0 / 3.0 + 1e-6;
  for (auto _ : state) benchmark::DoNotOptimize(verify_cover(K1, cfg));
}
BENCHMARK(BM_VerifyOctahedron)->Unit(benchmark::kMillisecond);

static void BM_VerifyBall(benchmark::State& state) {
  const ConvexBody B = ConvexBody::lp_ball(2, 3);
  CoverConfig cfg = lpball_cover_thm2(2.0);
  cfg.r = 0.8166;
  for (auto _ : state) benchmark::DoNotOptimize(verify_cover(B, cfg));
}
BENCHMARK(BM_VerifyBall)->Unit(benchmark::kMillisecond);

static void BM_GaugeLp(benchmark::State& state) {
  const ConvexBody K = ConvexBody::lp_ball(3.0, 3);
  const Vec p = make_vec({0.2, -0.4, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(K.gauge(p));
}
BENCHMARK(BM_GaugeLp);

static void BM_PhiReuleaux(benchmark::State& state) {
  const PointCloud X{boundary_sample(reuleaux_polygon(3), static_cast<int>(state.range(0)))};
  for (auto _ : state) benchmark::DoNotOptimize(phi_upper(X, 3));
}
BENCHMARK(BM_PhiReuleaux)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
