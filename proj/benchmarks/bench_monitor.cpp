#include <benchmark/benchmark.h>

#include "fairmon/bse/spec.hpp"
#include "fairmon/experiments/hypercube.hpp"
#include "fairmon/experiments/lending.hpp"
#include "fairmon/monitor/monitor.hpp"
#include "fairmon/pomc/diagnostics.hpp"
#include "fairmon/pomc/models.hpp"
#include "fairmon/pomc/sampler.hpp"

namespace {

using namespace fairmon;

void BM_MonitorUpdateLending(benchmark::State& state) {
  const auto doc = bse::parse_spec(experiments::kPhiDpSpecText);
  const auto model =
      pomc::relabel_to(pomc::lending_model(), doc.alphabet);
  const auto diag = pomc::validate(model);
  const auto path = pomc::sample_path(model, diag.stationary, 1 << 16, 7);
  monitor::Monitor monitor(doc);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(monitor.next(path[i]));
    i = (i + 1) & (path.size() - 1);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MonitorUpdateLending);

void BM_MonitorUpdateHypercube(benchmark::State& state) {
  const auto doc = bse::parse_spec(experiments::kPsiDpSpecText);
  const auto model =
      pomc::relabel_to(pomc::hypercube_model(3), doc.alphabet);
  const auto diag = pomc::validate(model);
  const auto path = pomc::sample_path(model, diag.stationary, 1 << 16, 7);
  monitor::Monitor monitor(doc);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(monitor.next(path[i]));
    i = (i + 1) & (path.size() - 1);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MonitorUpdateHypercube);

void BM_SamplerStep(benchmark::State& state) {
  const auto model = pomc::hypercube_model(3);
  const auto diag = pomc::validate(model);
  pomc::PathSampler sampler(model, diag.stationary, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.next_symbol());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SamplerStep);

void BM_ParseSpec(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bse::parse_spec(experiments::kPhiDpSpecText));
  }
}
BENCHMARK(BM_ParseSpec);

}  // namespace

BENCHMARK_MAIN();
