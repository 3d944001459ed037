#include <random>

#include <benchmark/benchmark.h>

#include "corrcache/bounds.hpp"
#include "corrcache/verify.hpp"

using namespace corrcache;

namespace {

DemandVector round_robin(int n_files, int n_users) {
  std::vector<int> d(static_cast<std::size_t>(n_users));
  for (int k = 0; k < n_users; ++k) d[static_cast<std::size_t>(k)] = k % n_files + 1;
  return DemandVector{d};
}

void BM_Gf2Insert(benchmark::State& state) {
  const auto width = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<BitVector> rows;
  for (std::size_t i = 0; i < width; ++i) {
    BitVector v(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (rng() % 8 == 0) v.set(c);
    }
    rows.push_back(std::move(v));
  }
  for (auto _ : state) {
    Gf2Matrix m(width);
    for (const auto& r : rows) m.insert(r);
    benchmark::DoNotOptimize(m.rank());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gf2Insert)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_BuildDelivery(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const auto inst = instance_at_corner(5, 20, 2, t);
  const auto d = round_robin(5, 20);
  const auto u = choose_leaders(d);
  for (auto _ : state) benchmark::DoNotOptimize(build_delivery(inst, d, u).combinations.size());
}
BENCHMARK(BM_BuildDelivery)->Arg(1)->Arg(2)->Arg(3)->Arg(19);

void BM_VerifyDemand(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const auto inst = instance_at_corner(5, 10, 2, t);
  const auto d = round_robin(5, 10);
  for (auto _ : state) benchmark::DoNotOptimize(verify_demand(inst, d).decodable);
}
BENCHMARK(BM_VerifyDemand)->DenseRange(1, 4);

void BM_AverageEnvelope(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(converse_envelope_average(5, 20, 2).hull.size());
}
BENCHMARK(BM_AverageEnvelope);

}  // namespace
BENCHMARK_MAIN();
