// Parallel ring synthesis / Gram assembly against their serial references.

#include <benchmark/benchmark.h>

#include "lslab/extremal.hpp"
#include "lslab/spectrum.hpp"

using namespace lslab;

namespace {

SpectralFunction bench_function(double lambda) {
  SpectralFunction f = random_band_function(lambda, 7);
  f.frame = Frame::with_pole(Point3::from_spherical(0.6, 1.1));
  return f;
}

void BM_evaluate(benchmark::State& state) {
  const SpectralFunction f = bench_function(static_cast<double>(state.range(0)));
  const QuadratureGrid g = lp_grid(policy_for(f, 2.0), f.frame);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(f, g));
  state.counters["nodes"] = static_cast<double>(g.size());
}

void BM_evaluate_serial(benchmark::State& state) {
  const SpectralFunction f = bench_function(static_cast<double>(state.range(0)));
  const QuadratureGrid g = lp_grid(policy_for(f, 2.0), f.frame);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_serial(f, g));
  state.counters["nodes"] = static_cast<double>(g.size());
}

Measure cap_measure(const BasisIndex& b) {
  QuadraturePolicy p;
  p.degree = b.max_degree();
  return region_measure(Region::cap(Point3::from_spherical(0.4, 0.2), 0.8), p);
}

void BM_gram(benchmark::State& state) {
  const BasisIndex b = BasisIndex::band(static_cast<double>(state.range(0)));
  const Measure mu = cap_measure(b);
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(b, mu));
}

void BM_gram_serial(benchmark::State& state) {
  const BasisIndex b = BasisIndex::band(static_cast<double>(state.range(0)));
  const Measure mu = cap_measure(b);
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix_serial(b, mu));
}

}  // namespace

BENCHMARK(BM_evaluate)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evaluate_serial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gram)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gram_serial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
