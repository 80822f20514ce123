#include <benchmark/benchmark.h>

#include "hyperred/quadrature.hpp"
#include "hyperred/series.hpp"
#include "hyperred/transforms.hpp"

using namespace hyperred;

namespace {

void eval_spec(benchmark::State& state, HypergeometricSpec spec) {
  for (auto _ : state) {
    EvalResult r = eval_pfq(spec);
    benchmark::DoNotOptimize(r);
  }
}

void oracle(benchmark::State& state, Representation rep, Bindings bindings, double z) {
  for (auto _ : state) {
    OracleResult r = oracle_3f2(rep, bindings, z);
    benchmark::DoNotOptimize(r);
  }
}

void BM_ShiftDecompose(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    EvalResult r = eval_expression(shift_decompose(0.7, -1.2, 1.4, 2.3, k, 0.55));
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK_CAPTURE(eval_spec, entire_1f1, HypergeometricSpec{{0.3}, {1.7}, -4.2});
BENCHMARK_CAPTURE(eval_spec, entire_1f1_large, HypergeometricSpec{{-0.5}, {1.5}, -30.0});
BENCHMARK_CAPTURE(eval_spec, gauss_half, HypergeometricSpec{{1.0, 1.0}, {2.0}, -0.5});
BENCHMARK_CAPTURE(eval_spec, gauss_near_radius, HypergeometricSpec{{0.5, 1.5}, {2.25}, 0.95});
BENCHMARK_CAPTURE(eval_spec, three_two, HypergeometricSpec{{1.0, 1.0, 1.5}, {2.0, 2.0}, 0.5});
BENCHMARK_CAPTURE(eval_spec, unit_plus, HypergeometricSpec{{1.0, 1.0, 1.5}, {2.0, 2.0}, 1.0});
BENCHMARK_CAPTURE(eval_spec, unit_minus, HypergeometricSpec{{0.5, 0.5}, {1.2}, -1.0});
BENCHMARK_CAPTURE(eval_spec, terminating_4f3,
                  HypergeometricSpec{{2.05, 2.02, 1.65, -20.0}, {1.02, 1.40, -15.7}, 1.0});

BENCHMARK_CAPTURE(oracle, i1, Representation::i1, Bindings{{"a", 0.5}}, 0.5);
BENCHMARK_CAPTURE(oracle, i2, Representation::i2, Bindings{{"a", 0.5}}, 0.5);
BENCHMARK_CAPTURE(oracle, i30, Representation::i30, Bindings{{"a", 1.5}, {"b", 0.7}}, 0.5);
BENCHMARK_CAPTURE(oracle, i31, Representation::i31, Bindings{{"a", 0.8}, {"b", -0.3}}, 0.6);

BENCHMARK(BM_ShiftDecompose)->DenseRange(0, 3);
