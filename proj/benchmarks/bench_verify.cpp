#include <benchmark/benchmark.h>

#include "hyperred/verifier.hpp"

using namespace hyperred;

namespace {

void BM_VerifyIdentity(benchmark::State& state, const char* id) {
  SamplingPlan plan;
  plan.samples_per_identity = 10;
  const IdentityRecord& record = lookup(id);
  for (auto _ : state) {
    VerificationReport r = verify_identity(record, plan, ComparisonPolicy{});
    benchmark::DoNotOptimize(r);
  }
}

void BM_VerifySuite(benchmark::State& state) {
  SamplingPlan plan;
  plan.samples_per_identity = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto reports = verify_suite(plan, ComparisonPolicy{});
    benchmark::DoNotOptimize(reports);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_VerifyIdentity, E3, "E3");
BENCHMARK_CAPTURE(BM_VerifyIdentity, S36, "S36");
BENCHMARK_CAPTURE(BM_VerifyIdentity, T9, "T9");
BENCHMARK(BM_VerifySuite)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
