#include <benchmark/benchmark.h>

#include "nvqm/nvqm.hpp"

namespace {

void BM_HermitianEigen(benchmark::State& state) {
  const nvqm::ComplexMatrix m = nvqm::random_mixed(1).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(nvqm::hermitian_eigen(m));
}
BENCHMARK(BM_HermitianEigen);

void BM_UncertaintyReport(benchmark::State& state) {
  const nvqm::DensityMatrix rho = nvqm::random_mixed(2);
  for (auto _ : state) benchmark::DoNotOptimize(nvqm::uncertainty_report(rho));
}
BENCHMARK(BM_UncertaintyReport);

void BM_UncertaintyClosed(benchmark::State& state) {
  const nvqm::BlochForm b = nvqm::bloch_decompose(nvqm::random_mixed(3));
  for (auto _ : state) benchmark::DoNotOptimize(nvqm::uncertainty_closed(b));
}
BENCHMARK(BM_UncertaintyClosed);

void BM_Concurrence(benchmark::State& state) {
  const nvqm::DensityMatrix rho = nvqm::random_mixed(4);
  for (auto _ : state) benchmark::DoNotOptimize(nvqm::concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_RunProtocol(benchmark::State& state) {
  const nvqm::DensityMatrix rho = nvqm::werner_state(nvqm::WernerWeight(0.5));
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(nvqm::run_protocol(rho, nvqm::PauliObservable::sigma1(), shots, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunProtocol)->Arg(1000)->Arg(100000);

}  // namespace
