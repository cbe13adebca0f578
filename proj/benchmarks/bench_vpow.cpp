#include <benchmark/benchmark.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "vpow/engine.hpp"
#include "vpow/measures.hpp"
#include "vpow/montecarlo.hpp"
#include "vpow/rational.hpp"
#include "vpow/systems.hpp"

namespace {

vpow::BeliefMeasure mixture_measure() {
  return vpow::BeliefMeasure(
      {{vpow::make_rat(3, 10), vpow::make_rat(1, 4)},
       {vpow::make_rat(7, 10), vpow::make_rat(1, 4)}},
      {{vpow::Rat(0), vpow::Rat(1), vpow::make_rat(1, 2)}});
}

// Deterministic weights in 1..9 so runs are comparable across machines.
std::vector<vpow::Rat> mixed_weights(int n) {
  std::uint64_t state = 0x243F6A8885A308D3ull;
  std::vector<vpow::Rat> weights;
  weights.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    weights.push_back(vpow::Rat(static_cast<long>(1 + z % 9)));
  }
  return weights;
}

void BM_SizeKernelUniform(benchmark::State& state) {
  const vpow::BeliefMeasure uniform = vpow::BeliefMeasure::shapley_shubik();
  const long long n = state.range(0);
  for (auto _ : state) {
    vpow::SizeKernel kernel = vpow::size_kernel(uniform, n);
    benchmark::DoNotOptimize(kernel);
  }
}
BENCHMARK(BM_SizeKernelUniform)->Arg(32)->Arg(128)->Arg(512);

void BM_SizeKernelMixture(benchmark::State& state) {
  const vpow::BeliefMeasure mixture = mixture_measure();
  const long long n = state.range(0);
  for (auto _ : state) {
    vpow::SizeKernel kernel = vpow::size_kernel(mixture, n);
    benchmark::DoNotOptimize(kernel);
  }
}
BENCHMARK(BM_SizeKernelMixture)->Arg(32)->Arg(128)->Arg(512);

void BM_AnalyzeMajority(benchmark::State& state) {
  const vpow::BeliefMeasure coin = vpow::BeliefMeasure::penrose_banzhaf();
  const long long n = state.range(0);
  const vpow::WeightedVotingSystem system = vpow::simple_majority(n);
  for (auto _ : state) {
    vpow::PowerReport report = vpow::analyze(system, coin);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_AnalyzeMajority)->Arg(15)->Arg(63)->Arg(255);

void BM_AnalyzeWeighted(benchmark::State& state) {
  const vpow::BeliefMeasure uniform = vpow::BeliefMeasure::shapley_shubik();
  const int n = static_cast<int>(state.range(0));
  const vpow::WeightedVotingSystem system =
      vpow::WeightedVotingSystem::from_relative_quota(mixed_weights(n),
                                                      vpow::make_rat(1, 2));
  for (auto _ : state) {
    vpow::PowerReport report = vpow::analyze(system, uniform);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_AnalyzeWeighted)->Arg(16)->Arg(32)->Arg(64);

void BM_WeightedEfficiency(benchmark::State& state) {
  const vpow::BeliefMeasure mixture = mixture_measure();
  const int n = static_cast<int>(state.range(0));
  const vpow::WeightedVotingSystem system =
      vpow::WeightedVotingSystem::from_relative_quota(mixed_weights(n),
                                                      vpow::make_rat(1, 2));
  for (auto _ : state) {
    vpow::Rat value = vpow::efficiency(system, mixture);
    benchmark::DoNotOptimize(value);
  }
}
BENCHMARK(BM_WeightedEfficiency)->Arg(32)->Arg(96)->Arg(192);

void BM_BruteForce(benchmark::State& state) {
  const vpow::BeliefMeasure coin = vpow::BeliefMeasure::penrose_banzhaf();
  const int n = static_cast<int>(state.range(0));
  const vpow::WeightedVotingSystem system =
      vpow::WeightedVotingSystem::from_relative_quota(mixed_weights(n),
                                                      vpow::make_rat(1, 2));
  for (auto _ : state) {
    vpow::PowerReport report = vpow::brute_force_analyze(system, coin);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_BruteForce)->Arg(10)->Arg(14)->Arg(18);

void BM_SampleProfile(benchmark::State& state) {
  const vpow::BeliefMeasure mixture = mixture_measure();
  const long long samples = state.range(0);
  const vpow::WeightedVotingSystem system = vpow::simple_majority(101);
  vpow::mc::EstimateRequest request;
  request.quantities = {vpow::Quantity::E};
  request.samples = samples;
  request.seed = 7;
  for (auto _ : state) {
    std::vector<vpow::mc::Estimate> estimates =
        vpow::mc::estimate(system, mixture, request);
    benchmark::DoNotOptimize(estimates);
  }
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_SampleProfile)->Arg(1000)->Arg(10000);

}  // namespace

int main(int argc, char** argv) {
  ::benchmark::Initialize(&argc, argv);
  if (::benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  ::benchmark::RunSpecifiedBenchmarks();
  ::benchmark::Shutdown();
  return 0;
}
