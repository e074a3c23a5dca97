#include <benchmark/benchmark.h>

#include "flowcouple/kernels.hpp"
#include "flowcouple/random_instances.hpp"
#include "flowcouple/transport.hpp"

using namespace flowcouple;

namespace {

Digraph dag(std::size_t n) {
  random::Rng rng(7);
  return random::random_dag(rng, random::numbered_vertices(n), 0.2);
}

WeightedDigraph weighted(std::size_t n) {
  random::Rng rng(8);
  return random::random_connected_weighted(rng, n, 0.1);
}

struct UpsetInput {
  std::vector<std::uint64_t> up;
  std::vector<std::int64_t> delta;
};

// Dominated pair on a sparse poset: the scan visits every subset.
UpsetInput upsets(std::size_t n) {
  random::Rng rng(9);
  auto rel = random::random_poset(rng, n, 0.15);
  UpsetInput in;
  for (Vertex x = 0; x < n; ++x) in.up.push_back(rel.up_mask(x));
  in.delta.assign(n, 0);
  return in;
}

void BM_Reachability(benchmark::State& state) {
  auto g = dag(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reachability(g));
}

void BM_ReachabilitySerial(benchmark::State& state) {
  auto g = dag(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reachability_serial(g));
}

void BM_Geodesic(benchmark::State& state) {
  auto wg = weighted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::geodesic_matrix(*wg.graph, wg.weights));
}

void BM_GeodesicSerial(benchmark::State& state) {
  auto wg = weighted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::geodesic_matrix_serial(*wg.graph, wg.weights));
}

void BM_Upset(benchmark::State& state) {
  auto in = upsets(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::first_violating_upset(in.up, in.delta));
}

void BM_UpsetSerial(benchmark::State& state) {
  auto in = upsets(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::first_violating_upset_serial(in.up, in.delta));
}

}  // namespace

BENCHMARK(BM_Reachability)->Arg(64)->Arg(256);
BENCHMARK(BM_ReachabilitySerial)->Arg(64)->Arg(256);
BENCHMARK(BM_Geodesic)->Arg(32)->Arg(96);
BENCHMARK(BM_GeodesicSerial)->Arg(32)->Arg(96);
BENCHMARK(BM_Upset)->Arg(16)->Arg(20);
BENCHMARK(BM_UpsetSerial)->Arg(16)->Arg(20);

BENCHMARK_MAIN();
