#include <benchmark/benchmark.h>

#include "nij/crossed.hpp"
#include "nij/table.hpp"
#include "nij/toeplitz.hpp"
#include "nij/torsion.hpp"

using namespace nij;

static void BM_ToeplitzMul(benchmark::State& state) {
  const int deg = static_cast<int>(state.range(0));
  const auto T = ToeplitzAlgebra::create({deg, 8});
  Rng r(1);
  const Element a = T->random_element(r, 0), b = T->random_element(r, 0);
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_mul(a.as<ToeplitzData>(), b.as<ToeplitzData>()));
}
BENCHMARK(BM_ToeplitzMul)->Arg(2)->Arg(8)->Arg(32);

static void BM_CrossedMul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> alpha, y;
  for (int x = 0; x < n; ++x) {
    alpha.push_back((x + 1) % n);
    y.push_back(x);
  }
  const auto X = CrossedAlgebra::create({DynSystem(n, alpha, y), 4});
  Rng r(2);
  const Element a = X->random_element(r, 0), b = X->random_element(r, 0);
  for (auto _ : state) benchmark::DoNotOptimize(crossed_mul(X->system(), a.as<CrossedData>(), b.as<CrossedData>()));
}
BENCHMARK(BM_CrossedMul)->Arg(5)->Arg(50)->Arg(500);

static void BM_NijenhuisVerdictCrossed(benchmark::State& state) {
  const auto X = CrossedAlgebra::create({DynSystem(6, {1, 2, 3, 4, 0, 5}, {0, 1, 2, 3, 4}), 3});
  const OperatorSpec op = OperatorSpec::adjoint(X->u_power(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(nijenhuis_verdict(*X, op, Strategy::Random, 1, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_NijenhuisVerdictCrossed)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_NijenhuisVerdictMatrixPairs(benchmark::State& state) {
  const auto M = MatrixAlgebra::create({8, BlockProjection{4, 4}});
  Rng r(3);
  const OperatorSpec op = OperatorSpec::two_sided(M->random_element(r, 0), M->random_element(r, 0));
  for (auto _ : state) benchmark::DoNotOptimize(nijenhuis_verdict(*M, op, Strategy::GeneratorPairs, 1, 1));
}
BENCHMARK(BM_NijenhuisVerdictMatrixPairs)->Unit(benchmark::kMillisecond);

static void BM_BuiltinSuite(benchmark::State& state) {
  const auto suite = builtin_suite(1, 30);
  const std::map<int, VerdictMatrix> expected{{1, expected_table(1)}, {2, expected_table(2)}};
  for (auto _ : state) benchmark::DoNotOptimize(emit_table(suite, expected));
}
BENCHMARK(BM_BuiltinSuite)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
