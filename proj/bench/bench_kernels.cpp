// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "wsnloc/apsp.hpp"
#include "wsnloc/experiment.hpp"
#include "wsnloc/mds.hpp"
#include "wsnloc/topology.hpp"

using namespace wsnloc;

namespace {

Network network(std::size_t n) {
  NetworkRequest req;
  req.topology.n = n;
  req.radio_range = 2.2;
  req.range_error_fraction = 0.05;
  return generate_connected_network(req, 99);
}

Execution exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void set_label(benchmark::State& state) {
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
}

void BM_ApspClassic(benchmark::State& state) {
  const Network net = network(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apsp_classic(net.graph, exec_of(state)));
  }
  set_label(state);
}

void BM_ApspRefined(benchmark::State& state) {
  const Network net = network(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apsp_refined(net.graph, 2.2, RefineMode::two_hop_only, exec_of(state)));
  }
  set_label(state);
}

void BM_DoubleCenter(benchmark::State& state) {
  const Network net = network(static_cast<std::size_t>(state.range(0)));
  const DistanceMatrix d = apsp_classic(net.graph, Execution::serial);
  for (auto _ : state) {
    benchmark::DoNotOptimize(double_center(d, exec_of(state)));
  }
  set_label(state);
}

void BM_Suite(benchmark::State& state) {
  Sweep sweep = default_sweep();
  sweep.topologies = {TopologyKind::random};
  sweep.anchor_counts = {10};
  sweep.radio_ranges = {2.2};
  sweep.range_errors = {0.0, 0.1};
  SuiteOptions options;
  options.trials = static_cast<std::size_t>(state.range(0));
  options.exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_suite(sweep, options));
  }
  set_label(state);
}

} // namespace

BENCHMARK(BM_ApspClassic)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApspRefined)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DoubleCenter)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Suite)->ArgsProduct({{8}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
