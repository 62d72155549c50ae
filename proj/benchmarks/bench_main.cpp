#include <benchmark/benchmark.h>

#include "atl/counters.hpp"
#include "atl/mazzanti.hpp"
#include "atl/sequences.hpp"
#include "atl/term.hpp"

namespace {

using atl::Int;

void BM_GeoSum(benchmark::State& state) {
  const unsigned r = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(atl::geo_sum(r, Int(7), Int(200)));
}
BENCHMARK(BM_GeoSum)->Arg(0)->Arg(1)->Arg(2)->Arg(3);

void BM_Delta(benchmark::State& state) {
  const unsigned long b = static_cast<unsigned long>(state.range(0));
  const Int a = atl::pow2_ui(b) - 3;
  for (auto _ : state) benchmark::DoNotOptimize(atl::delta(a, b));
}
BENCHMARK(BM_Delta)->Arg(8)->Arg(64)->Arg(1024);

void BM_BuildM_Demo(benchmark::State& state) {
  const atl::CountingInstance inst = atl::demo_counting_instance();
  for (auto _ : state) benchmark::DoNotOptimize(atl::build_M(inst));
}
BENCHMARK(BM_BuildM_Demo);

void BM_CountSolutions_Demo(benchmark::State& state) {
  const atl::CountingInstance inst = atl::demo_counting_instance();
  for (auto _ : state) benchmark::DoNotOptimize(atl::count_solutions(inst));
}
BENCHMARK(BM_CountSolutions_Demo);

void BM_LucasLehmer(benchmark::State& state) {
  const std::uint64_t p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(atl::lucas_lehmer_test(p));
}
BENCHMARK(BM_LucasLehmer)->Arg(127)->Arg(521)->Arg(1279);

void BM_PellTermEval(benchmark::State& state) {
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(atl::pell_x_term_eval(n));
}
BENCHMARK(BM_PellTermEval)->Arg(10)->Arg(100)->Arg(300);

void BM_ParseRender(benchmark::State& state) {
  const std::string src = "hw(2^(n^2+2*n) - 1) + binom(n, 2) % gcd(n+1, 34)";
  for (auto _ : state) {
    atl::Term t = atl::parse(src);
    benchmark::DoNotOptimize(atl::render(t));
  }
}
BENCHMARK(BM_ParseRender);

void BM_ExpandSquares_Mersenne(benchmark::State& state) {
  const atl::CountingSpec spec = atl::build_mersenne_system();
  for (auto _ : state) benchmark::DoNotOptimize(atl::expand_squares(spec.system));
}
BENCHMARK(BM_ExpandSquares_Mersenne);

}  // namespace

BENCHMARK_MAIN();
