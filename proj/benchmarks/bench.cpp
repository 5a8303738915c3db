#include <benchmark/benchmark.h>

#include <random>

#include "necklab/bubbles.hpp"
#include "necklab/elliptic.hpp"
#include "necklab/fft.hpp"
#include "necklab/lorentz.hpp"
#include "necklab/ops.hpp"

namespace {

using namespace necklab;

void BM_fft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::complex<double>> v(n);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : v) z = {u(rng), u(rng)};
  for (auto _ : state) {
    auto w = v;
    fft(w, false);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_fft)->Arg(256)->Arg(4096);

void BM_rearrangement(benchmark::State& state) {
  GridPtr g = Grid::disc(1.0, static_cast<int>(state.range(0)), 128);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f(g, 1);
  for (auto& x : f.values()) x = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(norm_L21(f));
}
BENCHMARK(BM_rearrangement)->Arg(64)->Arg(256);

void BM_poisson(benchmark::State& state) {
  GridPtr g = Grid::disc(1.0, static_cast<int>(state.range(0)), 128);
  Field rhs(g, 1, -1.0);
  BoundaryData bc = BoundaryData::zero(*g);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_solve(rhs, bc));
}
BENCHMARK(BM_poisson)->Arg(64)->Arg(256);

void BM_synthesize(benchmark::State& state) {
  GridPtr g = Grid::disc(1.0, 96, 128);
  RationalMap m({{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}});
  std::vector<BubbleSpec> bubbles{{m, 0.0, 0.0, 1.0, 0.25}};
  Field body = constant_body(g, {0.0, 0.0, 1.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(synthesize_sequence(body, bubbles, 4));
}
BENCHMARK(BM_synthesize);

}  // namespace

BENCHMARK_MAIN();
