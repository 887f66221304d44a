// Serial reference vs OpenMP kernels for the batch sweeps.
// Thread count follows MPRATES_THREADS (or the OpenMP default).

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mprates/sweep.hpp"
#include "support.hpp"

using namespace mprates;

namespace {

const PhysicalConstants kNatural = PhysicalConstants::natural();
const Frequency kFreq = Frequency::from_omega(1.0, kNatural);

std::vector<MultipoleMoment> moments(MomentKind kind, std::size_t n) {
  std::mt19937_64 rng(7);
  std::vector<MultipoleMoment> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(testing::random_moment(kind, rng));
  return out;
}

std::vector<cdouble> media(std::size_t n) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cdouble> out(n);
  for (auto& e : out) e = cdouble(-10.0 + 20.0 * u(rng), 5.0 * u(rng));
  return out;
}

void near_batch(benchmark::State& state, Execution exec) {
  const auto ms = moments(static_cast<MomentKind>(state.range(0)), 2000);
  const auto eps = media(100);
  const auto geom = HalfSpaceGeometry::at_height(1e-3);
  for (auto _ : state) {
    auto out = near_field_batch(ms, eps, kFreq, geom, exec, kNatural);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(ms.size() * eps.size()));
}

void sweep(benchmark::State& state, Execution exec) {
  const auto m = moments(static_cast<MomentKind>(state.range(0)), 1).front();
  const auto heights = height_grid(1e-3, 10.0, 16, true);
  for (auto _ : state) {
    auto out = oracle_sweep(m, kFreq, heights, {2.0, 0.5}, 1.0, {}, exec, kNatural);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(heights.size()));
}

void kinds(benchmark::internal::Benchmark* b) {
  for (int k = 0; k < 5; ++k) b->Arg(k);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK_CAPTURE(near_batch, serial, Execution::Serial)->Apply(kinds);
BENCHMARK_CAPTURE(near_batch, parallel, Execution::Parallel)->Apply(kinds);
BENCHMARK_CAPTURE(sweep, serial, Execution::Serial)->Apply(kinds);
BENCHMARK_CAPTURE(sweep, parallel, Execution::Parallel)->Apply(kinds);

BENCHMARK_MAIN();
