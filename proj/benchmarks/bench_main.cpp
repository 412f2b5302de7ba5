#include <benchmark/benchmark.h>

#include <string>

#include "specalt/error.hpp"
#include "specalt/lattice.hpp"
#include "specalt/tables.hpp"
#include "specalt/unknotting.hpp"

using namespace specalt;

namespace {

LinkDiagram knot(const std::string& name) {
  static const auto table = load_table(std::string(SPECALT_DATA_DIR) + "/knots.csv");
  for (const auto& r : table.records)
    if (r.name == name) return parse_pd(r.pd);
  throw Error(ErrorKind::Parse, "no fixture " + name);
}

const char* const kKnots[] = {"8_15", "9_35", "11a299", "11a354", "12a1035"};

void BM_Obstruction(benchmark::State& state) {
  const auto d = knot(kKnots[state.range(0)]);
  ObstructionOptions opts;
  opts.enumerate_all = true;
  for (auto _ : state) benchmark::DoNotOptimize(obstruction(d, opts));
  state.SetLabel(kKnots[state.range(0)]);
}
BENCHMARK(BM_Obstruction)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_Bracket(benchmark::State& state) {
  const auto d = knot(kKnots[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(kauffman_bracket(d.code()));
  state.SetLabel(kKnots[state.range(0)]);
}
BENCHMARK(BM_Bracket)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

// Every p-subset of 11a354 is refuted; p+1 has witnesses.
void BM_ExhaustiveSearch(benchmark::State& state) {
  const auto d = knot("11a354");
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(d, m));
}
BENCHMARK(BM_ExhaustiveSearch)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Simplify(benchmark::State& state) {
  const auto d = knot("11a299");
  const auto changed = change_crossings(d, Subset{0, 1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(reidemeister_simplify(changed.code()));
}
BENCHMARK(BM_Simplify)->Unit(benchmark::kMillisecond);

void BM_Decide(benchmark::State& state) {
  const auto d = knot(kKnots[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(decide_minimal_unlinking(d));
  state.SetLabel(kKnots[state.range(0)]);
}
BENCHMARK(BM_Decide)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
