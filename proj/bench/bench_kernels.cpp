#include <random>

#include <benchmark/benchmark.h>

#include "vortexlab/kernels.hpp"
#include "vortexlab/random_fields.hpp"

using namespace vx;

namespace {

kernels::Exec exec_of(const benchmark::State& s) {
  return s.range(1) ? kernels::Exec::parallel : kernels::Exec::serial;
}

void BM_spectral_laplace(benchmark::State& state) {
  const int n = int(state.range(0));
  std::mt19937_64 rng(1);
  Field f = random_smooth_field(n, 2, 2, rng), out(n, 2, 2);
  auto sym = kernels::symbol_laplace(n);
  for (auto _ : state) {
    kernels::spectral_apply(f.data(), out.data(), n, 4, sym, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_pointwise_matmul(benchmark::State& state) {
  const int n = int(state.range(0));
  std::mt19937_64 rng(2);
  Field a = random_smooth_field(n, 3, 3, rng), b = random_smooth_field(n, 3, 3, rng), c(n, 3, 3);
  for (auto _ : state) {
    kernels::pointwise_matmul(a.data(), b.data(), c.data(), n * n, 3, 3, 3, exec_of(state));
    benchmark::DoNotOptimize(c.data());
  }
}

void BM_pointwise_adjoint(benchmark::State& state) {
  const int n = int(state.range(0));
  std::mt19937_64 rng(3);
  Field h1 = random_metric(n, {0, 0}, rng), h2 = random_metric(n, {0}, rng);
  Field f = random_smooth_field(n, 1, 2, rng), out(n, 2, 1);
  for (auto _ : state) {
    kernels::pointwise_adjoint(h1.data(), f.data(), h2.data(), out.data(), n * n, 2, 1, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

// second argument: 0 serial reference, 1 OpenMP
BENCHMARK(BM_spectral_laplace)->ArgsProduct({{32, 64, 128}, {0, 1}});
BENCHMARK(BM_pointwise_matmul)->ArgsProduct({{32, 64, 128}, {0, 1}});
BENCHMARK(BM_pointwise_adjoint)->ArgsProduct({{32, 64, 128}, {0, 1}});

BENCHMARK_MAIN();
