#include <benchmark/benchmark.h>

#include <nonstoch/channel.hpp>
#include <nonstoch/graph.hpp>

using namespace nonstoch;

namespace {

Channel pentagon() {
  ValueSet symbols;
  std::map<Value, ValueSet> transition;
  for (int i = 0; i < 5; ++i) {
    symbols.insert(Value(i));
    transition[Value(i)] = {Value(i), Value((i + 1) % 5)};
  }
  return Channel::make(symbols, symbols, std::move(transition));
}

void BM_StrongPower(benchmark::State& state) {
  const Graph base = confusability_graph(pentagon());
  const auto tau = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(strong_power(base, tau));
  }
}
BENCHMARK(BM_StrongPower)->Arg(2)->Arg(3);

void BM_MaxIndependentSet_PentagonPower(benchmark::State& state) {
  const Graph base = confusability_graph(pentagon());
  const auto tau = static_cast<unsigned>(state.range(0));
  const Graph power = strong_power(base, tau);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_independent_set(power));
  }
  state.counters["vertices"] = static_cast<double>(power.vertex_count());
}
BENCHMARK(BM_MaxIndependentSet_PentagonPower)->Arg(1)->Arg(2)->Arg(3);

void BM_CapacityProfile(benchmark::State& state) {
  const Channel channel = pentagon();
  const auto t_max = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(c0_lower_profile(channel, t_max));
  }
}
BENCHMARK(BM_CapacityProfile)->Arg(2)->Arg(3);

}  // namespace
