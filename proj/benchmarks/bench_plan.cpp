#include <benchmark/benchmark.h>

#include <random>

#include "nhplan/oracle.hpp"
#include "nhplan/world.hpp"

using namespace nhplan;

namespace {

void BM_PlanFixture(benchmark::State& state, const char* name) {
  const Fixture f = fixture_by_name(name);
  const OccupancyGrid grid = f.grid();
  std::size_t expansions = 0;
  for (auto _ : state) {
    const auto r = plan(f.start, f.goal, grid, f.vehicle, f.config);
    expansions = r.expansions;
    benchmark::DoNotOptimize(r.path.cost());
  }
  state.counters["expansions"] = static_cast<double>(expansions);
}

void BM_Oracle(benchmark::State& state, const char* name) {
  const Fixture f = fixture_by_name(name);
  const OccupancyGrid grid = f.grid();
  for (auto _ : state) {
    const auto r = oracle::dijkstra_reference(f.start, f.goal, grid, f.vehicle, f.config);
    benchmark::DoNotOptimize(r.cost);
  }
}

void BM_Collision(benchmark::State& state) {
  const auto mode = static_cast<CollisionMode>(state.range(0));
  const Fixture f = fixture_by_name("bottleneck");
  const OccupancyGrid grid = f.grid();
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Pose> poses;
  for (int i = 0; i < 1024; ++i) {
    poses.emplace_back(30 * u(rng), 30 * u(rng), 6.28 * u(rng));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pose_in_collision(poses[i++ & 1023], f.vehicle.footprint, grid, mode));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_PlanFixture, straight_line, "straight_line");
BENCHMARK_CAPTURE(BM_PlanFixture, headings_down_kinematic, "headings_down_kinematic");
BENCHMARK_CAPTURE(BM_PlanFixture, headings_down_geometric, "headings_down_geometric");
BENCHMARK_CAPTURE(BM_PlanFixture, uturn_big, "uturn_big");
BENCHMARK_CAPTURE(BM_PlanFixture, dual_lane_len2, "dual_lane_len2");
BENCHMARK_CAPTURE(BM_PlanFixture, bottleneck, "bottleneck");
BENCHMARK_CAPTURE(BM_Oracle, uturn_big, "uturn_big");
BENCHMARK(BM_Collision)
    ->Arg(static_cast<int>(CollisionMode::Midpoint))
    ->Arg(static_cast<int>(CollisionMode::Footprint));

BENCHMARK_MAIN();
