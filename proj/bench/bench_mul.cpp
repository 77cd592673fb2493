#include <benchmark/benchmark.h>

#include "nsvosa/delta.hpp"

using namespace nsvosa;

namespace {

// delta((x1 - x2 - phi1 phi2)/x0) and delta((x1 - x0)/x2), the two sides of the three-term identity.
Series lhs(long N) {
  WindowConfig w;
  w.N = N;
  DeltaSpec s{{1, "x1"}, SignedVar{-1, "x2"}, SignedVar{1, "x0"}, DeltaSpec::Nil{-1, "phi1", "phi2"}, 0};
  return build_delta(s, w);
}

Series rhs(long N) {
  WindowConfig w;
  w.N = N;
  DeltaSpec s{{1, "x1"}, SignedVar{-1, "x0"}, SignedVar{1, "x2"}, std::nullopt, 0};
  return build_delta(s, w);
}

void mul(benchmark::State& state, bool parallel) {
  const long N = state.range(0);
  const Series d = lhs(N), e = rhs(N);
  MulOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(ss_mul(d, e, opt));
  state.counters["terms"] = static_cast<double>(d.terms().size());
}

}  // namespace

BENCHMARK_CAPTURE(mul, serial, false)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(mul, parallel, true)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
