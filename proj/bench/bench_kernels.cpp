// Parallel kernels against their serial references.

#include "orbtrace/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace orbtrace;

namespace {

std::vector<CycloScalar> random_coeffs(std::size_t n, std::int64_t level, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> c(-9, 9), a(0, static_cast<int>(level) - 1);
  std::vector<CycloScalar> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(CycloScalar::root(a(rng), level) * CycloScalar(static_cast<long>(c(rng))));
  return v;
}

std::vector<kernels::ExteriorGenerator> fermions(std::int64_t max_energy, int per_level) {
  std::vector<kernels::ExteriorGenerator> gens;
  for (std::int64_t e = 1; e <= max_energy; e += 2)
    for (int g = 0; g < per_level; ++g) gens.push_back({e, g % 2});
  return gens;
}

template <bool Parallel>
void BM_cauchy_product(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_coeffs(n, 4, 1), b = random_coeffs(n, 4, 2);
  for (auto _ : state) {
    auto r = Parallel ? kernels::cauchy_product(a, b, n) : kernels::serial::cauchy_product(a, b, n);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_multiply_binomial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto base = random_coeffs(n, 3, 3);
  const CycloScalar s = CycloScalar::root(1, 3);
  for (auto _ : state) {
    auto v = base;
    for (std::size_t shift = 1; shift <= 16; ++shift) {
      if (Parallel) kernels::multiply_binomial(v, shift, s);
      else kernels::serial::multiply_binomial(v, shift, s);
    }
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_lattice_sum(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? kernels::lattice_sum(4, {0.0, 1.0}, cutoff) : kernels::serial::lattice_sum(4, {0.0, 1.0}, cutoff);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_enumerate_states(benchmark::State& state) {
  const auto max_energy = state.range(0);
  const auto gens = fermions(max_energy, 4);
  for (auto _ : state) {
    auto r = Parallel ? kernels::enumerate_states(gens, max_energy, 2, 50'000'000)
                      : kernels::serial::enumerate_states(gens, max_energy, 2, 50'000'000);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_cauchy_product<true>)->Arg(200)->Arg(800);
BENCHMARK(BM_cauchy_product<false>)->Arg(200)->Arg(800);
BENCHMARK(BM_multiply_binomial<true>)->Arg(20000);
BENCHMARK(BM_multiply_binomial<false>)->Arg(20000);
BENCHMARK(BM_lattice_sum<true>)->Arg(100)->Arg(200);
BENCHMARK(BM_lattice_sum<false>)->Arg(100)->Arg(200);
BENCHMARK(BM_enumerate_states<true>)->Arg(14);
BENCHMARK(BM_enumerate_states<false>)->Arg(14);

BENCHMARK_MAIN();
