#include <benchmark/benchmark.h>

#include <random>

#include "gkm/presentation.hpp"

using namespace gkm;

static void BM_HermiteNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-50, 50);
  IntMatrix m(n, n + 3);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermite_normal_form(m));
}
BENCHMARK(BM_HermiteNormalForm)->Arg(8)->Arg(16)->Arg(32);

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> d(-20, 20);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16);

static void BM_GradedBasis(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(1));
  GraphPtr g = state.range(0) == 0 ? build_A(3) : state.range(0) == 1 ? build_B(2) : build_D(3);
  for (auto _ : state) benchmark::DoNotOptimize(graded_basis(g, k, Ring::Int));
}
BENCHMARK(BM_GradedBasis)->Args({0, 3})->Args({0, 4})->Args({1, 4})->Args({2, 2})->Unit(benchmark::kMillisecond);

static void BM_GradedBasisWitness(benchmark::State& state) {
  BasisOptions opts;
  opts.method = BasisMethod::Witness;
  GraphPtr g = build_A(3);
  for (auto _ : state) benchmark::DoNotOptimize(graded_basis(g, static_cast<unsigned>(state.range(0)), Ring::Int, opts));
}
BENCHMARK(BM_GradedBasisWitness)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_ReduceBasis(benchmark::State& state) {
  GraphPtr g = state.range(0) == 0 ? build_A(3) : build_B(2);
  auto basis = graded_basis(g, 3, Ring::Int).basis_classes();
  for (auto _ : state)
    for (const auto& h : basis) benchmark::DoNotOptimize(reduce(h));
}
BENCHMARK(BM_ReduceBasis)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_VerifyPresentation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_presentation(Family::B, 2, 4, Ring::Int));
}
BENCHMARK(BM_VerifyPresentation)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
