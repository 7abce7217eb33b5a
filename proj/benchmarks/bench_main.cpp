#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>

#include "skewsim/bridge.hpp"
#include "skewsim/exactsim.hpp"
#include "skewsim/models.hpp"
#include "skewsim/quadrature.hpp"
#include "skewsim/rng.hpp"
#include "skewsim/skewlaw.hpp"

using namespace skewsim;

namespace {

const SkewParams kEx1(0.6, -1.5707963267948966);

void BM_LogSkewDensity(benchmark::State& state) {
  double y = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_skew_density(1.0, 0.2, y, kEx1));
    y = y > 2.0 ? -2.0 : y + 1e-3;
  }
}
BENCHMARK(BM_LogSkewDensity);

void BM_Normalization(benchmark::State& state) {
  const double inf = std::numeric_limits<double>::infinity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate([](double y) { return skew_density(1.0, 0.2, y, kEx1); }, -inf, inf, 1e-10).value);
  }
}
BENCHMARK(BM_Normalization);

void BM_BridgePoint(benchmark::State& state) {
  BridgeRequest req;
  req.t = 0.5;
  req.a = 0.2;
  req.b = -0.4;
  req.params = kEx1;
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_skew_bridge_point(req, rng).value);
}
BENCHMARK(BM_BridgePoint);

void BM_ExactEndpoint(benchmark::State& state) {
  const DriftModel m = state.range(0) == 1 ? example1_model() : example2_model().model;
  const double x0 = state.range(0) == 1 ? 0.2 : 0.0;
  RngStream rng(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(exact_skeleton(m, x0, 1.0, rng).skeleton.endpoint);
}
BENCHMARK(BM_ExactEndpoint)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
