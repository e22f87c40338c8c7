#include <benchmark/benchmark.h>

#include <cstdint>

#include "flatres/flat_resolution.hpp"
#include "flatres/flow_directions.hpp"
#include "flatres/gm_reference.hpp"
#include "flatres/synthetic.hpp"

namespace {

void BM_D8FlowDirections(benchmark::State& state) {
  const auto dem = flatres::square_flat_dem(static_cast<std::int32_t>(state.range(0)));
  for (auto _ : state) {
    auto dirs = flatres::d8_flow_directions(dem);
    benchmark::DoNotOptimize(dirs);
  }
  state.SetItemsProcessed(state.iterations() * dem.size());
}
BENCHMARK(BM_D8FlowDirections)->Arg(100)->Arg(200)->Arg(400);

void BM_ResolveFlats(benchmark::State& state) {
  const auto dem = flatres::square_flat_dem(static_cast<std::int32_t>(state.range(0)));
  const auto dirs = flatres::d8_flow_directions(dem);
  for (auto _ : state) {
    auto res = flatres::resolve_flats(dem, dirs);
    benchmark::DoNotOptimize(res);
  }
  state.SetItemsProcessed(state.iterations() * dem.size());
}
BENCHMARK(BM_ResolveFlats)->Arg(100)->Arg(200)->Arg(400);

void BM_MaskedFlowDirections(benchmark::State& state) {
  const auto dem = flatres::square_flat_dem(static_cast<std::int32_t>(state.range(0)));
  const auto dirs = flatres::d8_flow_directions(dem);
  const auto res = flatres::resolve_flats(dem, dirs);
  for (auto _ : state) {
    auto out = flatres::d8_masked_flow_directions(res.flatmask, res.labels, dirs);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * dem.size());
}
BENCHMARK(BM_MaskedFlowDirections)->Arg(100)->Arg(200)->Arg(400);

void BM_GmResolveFlats(benchmark::State& state) {
  const auto dem = flatres::square_flat_dem(static_cast<std::int32_t>(state.range(0)));
  const auto dirs = flatres::d8_flow_directions(dem);
  for (auto _ : state) {
    auto res = flatres::gm_resolve_flats(dem, dirs);
    benchmark::DoNotOptimize(res);
  }
  state.SetItemsProcessed(state.iterations() * dem.size());
}
BENCHMARK(BM_GmResolveFlats)->Arg(50)->Arg(100)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
