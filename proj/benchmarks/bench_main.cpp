#include <benchmark/benchmark.h>

#include <numbers>

#include "twocopy/chsh.hpp"
#include "twocopy/experiment.hpp"
#include "twocopy/fock.hpp"
#include "twocopy/random_states.hpp"
#include "twocopy/two_copy.hpp"

namespace {

using namespace twocopy;

void BM_CollisionProbabilities(benchmark::State& state) {
  Rng rng(1);
  const auto rho = random_density(2, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(collision_probabilities(rho));
}
BENCHMARK(BM_CollisionProbabilities);

void BM_MaxChsh(benchmark::State& state) {
  Rng rng(2);
  const auto rho = random_density(2, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(max_chsh(rho));
}
BENCHMARK(BM_MaxChsh);

void BM_CoincidenceCurves(benchmark::State& state) {
  const auto grid = experiment::phase_grid(0.0, std::numbers::pi,
                                           static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fock::coincidence_curves(grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoincidenceCurves)->Arg(37)->Arg(181);

void BM_SimulateCounts(benchmark::State& state) {
  experiment::RunConfig config;
  config.phi_grid = experiment::phase_grid(0.0, std::numbers::pi, 37);
  config.shots_per_phase = static_cast<std::uint64_t>(state.range(0));
  config.visibility = 0.965;
  for (auto _ : state) benchmark::DoNotOptimize(experiment::simulate_counts(config));
}
BENCHMARK(BM_SimulateCounts)->Arg(100000)->Arg(10000000);

void BM_WitnessFromRun(benchmark::State& state) {
  experiment::RunConfig config;
  config.phi_grid = experiment::phase_grid(0.0, std::numbers::pi, 37);
  config.visibility = 0.965;
  for (auto _ : state) benchmark::DoNotOptimize(experiment::witness_from_run(config));
}
BENCHMARK(BM_WitnessFromRun);

}  // namespace
BENCHMARK_MAIN();
