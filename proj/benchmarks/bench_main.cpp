#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nlslab/evolution.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/potentials.hpp"
#include "nlslab/sine_transform.hpp"

using namespace nlslab;

static void BM_SineTransform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SineTransform t(n);
  std::vector<cplx> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = cplx(std::sin(0.01 * j), std::cos(0.02 * j));
  for (auto _ : state) {
    t.forward(v);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_SineTransform)->Arg(1023)->Arg(4095)->Arg(4096)->Arg(8191);

static void BM_StrangStep(benchmark::State& state) {
  const RadialGrid g(32.0, static_cast<std::size_t>(state.range(0)));
  Integrator integ(g, PotentialSpec::gaussian(0.3, 1.0), 3.0);
  std::vector<cplx> w(g.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = g.node(j) * std::exp(-g.node(j) * g.node(j));
  for (auto _ : state) {
    integ.step(w, 1e-3);
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_StrangStep)->Arg(4095)->Arg(4096);

static void BM_GroundState(benchmark::State& state) {
  const RadialGrid g(32.0, 4096);
  const double p = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_ground_state(g, p).mass);
}
BENCHMARK(BM_GroundState)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_KatoNorm(benchmark::State& state) {
  const RadialGrid g(32.0, 4096);
  const auto v = PotentialSpec::inverse_square(0.3, 1.0, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(kato_norm(v, g));
}
BENCHMARK(BM_KatoNorm)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
