#include <benchmark/benchmark.h>

#include "gridmind/action_memory.hpp"
#include "gridmind/agent.hpp"
#include "gridmind/object_memory.hpp"

using namespace gridmind;

namespace {

struct Fixture {
  NetworkState net;
  WorldModel world;
  AgentState agent;
  RngStream rng{42, 1};

  Fixture() : world(load_world(default_world_text())) {
    net = init_network(Params{}, rng);
    // warm the network up so benchmarks see a trained-ish state
    for (int i = 0; i < 256; ++i) make_a_step(agent, net, world, rng);
  }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

}  // namespace

static void BM_spike_o(benchmark::State& state) {
  auto& f = fixture();
  const NeuronSet input_lo = {0, 2, 5, 6, 8};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        spike_o(input_lo, f.net.cnx_lo, f.net.sto, f.net.params));
}
BENCHMARK(BM_spike_o);

static void BM_query(benchmark::State& state) {
  auto& f = fixture();
  const NeuronSet input_ma2 = {1, 8};
  for (auto _ : state)
    benchmark::DoNotOptimize(query(f.agent.prev_fired_o, input_ma2, f.net));
}
BENCHMARK(BM_query);

static void BM_make_a_step(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(make_a_step(f.agent, f.net, f.world, f.rng));
}
BENCHMARK(BM_make_a_step);

BENCHMARK_MAIN();
