#include <benchmark/benchmark.h>

#include <nonstoch/ensemble.hpp>
#include <nonstoch/info.hpp>
#include <nonstoch/partition.hpp>

#include <random>

using namespace nonstoch;

namespace {

RangeFamily random_family(std::mt19937_64& rng, int members, int points) {
  RangeFamily family;
  for (int i = 0; i < members; ++i) {
    ValueSet set;
    for (int v = 0; v < points; ++v)
      if (rng() % 2) set.insert(Value(v));
    if (set.empty()) set.insert(Value(static_cast<int>(rng() % points)));
    family.members.push_back({Value(i), std::move(set)});
  }
  return family;
}

void BM_OverlapPartition(benchmark::State& state) {
  std::mt19937_64 rng(9);
  const int members = static_cast<int>(state.range(0));
  const RangeFamily family = random_family(rng, members, 2 * members);
  for (auto _ : state) {
    benchmark::DoNotOptimize(overlap_partition(family));
  }
}
BENCHMARK(BM_OverlapPartition)->Arg(8)->Arg(32)->Arg(128);

void BM_MaximinInfo(benchmark::State& state) {
  std::mt19937_64 rng(10);
  const int samples = static_cast<int>(state.range(0));
  std::vector<std::vector<Value>> rows;
  for (int s = 0; s < samples; ++s) {
    rows.push_back({Value(static_cast<int>(rng() % 12)),
                    Value(static_cast<int>(rng() % 12))});
  }
  const Ensemble e({"X", "Y"}, std::move(rows));
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximin_info(e, "X", "Y"));
  }
}
BENCHMARK(BM_MaximinInfo)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
