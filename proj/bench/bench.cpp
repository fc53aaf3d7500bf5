// Serial reference vs OpenMP kernels. Inputs are drawn from the test corpus
// so both sides see identical work.

#include <benchmark/benchmark.h>

#include <algorithm>

#include "support/corpus.hpp"
#include "tropcorr/hurwitz.hpp"

using namespace tropcorr;

namespace {

const std::vector<tctest::CorpusEntry>& corpus() {
  static const auto c = tctest::make_corpus(20240601, 120);
  return c;
}

// Largest cover by (n, d): the heaviest scan.
const tctest::CorpusEntry& heaviest() {
  return *std::max_element(corpus().begin(), corpus().end(), [](const auto& a, const auto& b) {
    return std::pair(a.cover.order().size(), a.cover.degree()) < std::pair(b.cover.order().size(), b.cover.degree());
  });
}

// Degree-4 cover on four points, if present; else the highest degree with n = 4.
const tctest::CorpusEntry& oracle_case() {
  const tctest::CorpusEntry* best = nullptr;
  for (const auto& e : corpus()) {
    if (e.cover.order().size() != 4) continue;
    if (!best || e.cover.degree() > best->cover.degree()) best = &e;
  }
  return *best;
}

template <bool Parallel>
void BM_CountTrees(benchmark::State& state) {
  const Marking m = tctest::letters(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? count_stable_trees(m, {}) : count_stable_trees_serial(m, {}));
  }
}

template <bool Parallel>
void BM_Scan(benchmark::State& state) {
  const auto& e = heaviest();
  ScanOptions options;
  options.max_blocks = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? scan_obstructions(e.cover, e.portrait, options)
                                      : scan_obstructions_serial(e.cover, e.portrait, options));
  }
  state.SetLabel(e.name);
}

template <bool Parallel>
void BM_Oracle(benchmark::State& state) {
  const auto& e = oracle_case();
  const auto curves = enumerate_standard_multicurves(e.cover.order(), 1);
  const MarkedTree t1 = build_type(e.cover, e.portrait, curves.back()).t1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? enumerate_profile_types_oracle(e.cover, e.portrait, t1)
                                      : enumerate_profile_types_oracle_serial(e.cover, e.portrait, t1));
  }
  state.SetLabel(e.name);
}

}  // namespace

BENCHMARK(BM_CountTrees<false>)->Name("count_stable_trees/serial")->DenseRange(6, 8);
BENCHMARK(BM_CountTrees<true>)->Name("count_stable_trees/omp")->DenseRange(6, 8);
BENCHMARK(BM_Scan<false>)->Name("scan/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scan<true>)->Name("scan/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle<false>)->Name("oracle/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle<true>)->Name("oracle/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
