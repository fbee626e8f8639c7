#include <benchmark/benchmark.h>

#include "radconc/lemmas.hpp"
#include "radconc/verify.hpp"

using namespace radconc;

namespace {

AnalyticFn koebe_pair() {
  const std::vector<AnalyticFn> fs(2, make_fixture(ClassTag::S, {std::nullopt, 2.0},
                                                   FixtureVariant::koebe(0.3)));
  return combine(CombinationSpec({{0.4, 1.0}}, fs));
}

void BM_MinReOnCircles(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  const AnalyticFn F = koebe_pair();
  const auto kind = TransformKind::t_coa(2.0);
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(min_re_on_circles(kind, F, 0.06, n, 4 * n, exec));
  state.SetItemsProcessed(state.iterations() * 4 * n * n);
}

void BM_CertifySecBand(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(certify_sec_band(state.range(1), 7, exec));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

BENCHMARK(BM_MinReOnCircles)->ArgNames({"parallel", "radii"})->ArgsProduct({{0, 1}, {64, 128}});
BENCHMARK(BM_CertifySecBand)->ArgNames({"parallel", "trials"})->ArgsProduct({{0, 1}, {100000}});

BENCHMARK_MAIN();
