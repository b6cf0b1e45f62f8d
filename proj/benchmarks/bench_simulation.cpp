#include <benchmark/benchmark.h>

#include <nonstoch/estimation.hpp>

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

void BM_SimulateNoiseless(benchmark::State& state) {
  Eigen::MatrixXd a(1, 1), g(1, 1);
  a << 2.0;
  g << 1.0;
  const PlantModel plant = make_plant(a, g, std::nullopt, 1.0, 0.0);
  const Channel channel = pentagon();
  const CoderEstimator coder = build_coder_estimator(plant, channel, 0.95, 4);
  Eigen::VectorXd x0(1);
  x0 << 0.73;
  const auto steps = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_noiseless(
        plant, coder, channel, max_output_policy(), x0, steps));
  }
  state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_SimulateNoiseless)->Arg(64)->Arg(256)->Arg(1024);

void BM_SimulateDisturbed(benchmark::State& state) {
  Eigen::MatrixXd a(1, 1), g(1, 1);
  a << 2.0;
  g << 1.0;
  const PlantModel plant = make_plant(a, g, std::nullopt, 1.0, 0.01);
  const Channel channel = pentagon();
  const CoderEstimator coder = build_coder_estimator(plant, channel, 1.0, 4);
  Eigen::VectorXd x0(1);
  x0 << 0.73;
  const auto steps = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_disturbed(plant, coder, channel,
                                                max_output_policy(), x0,
                                                MaxNoise{}, steps));
  }
}
BENCHMARK(BM_SimulateDisturbed)->Arg(64)->Arg(256);

}  // namespace
