#include <cmath>
#include <random>

#include "doctest.h"
#include "nhplan/oracle.hpp"
#include "nhplan/search.hpp"
#include "nhplan/world.hpp"
#include "support/fixture_tools.hpp"

using namespace nhplan;

namespace {

VehicleSpec unit_vehicle() {
  VehicleSpec v;
  v.footprint = {1.0, 0.5, 0.0};
  return v;
}

double sum_step_costs(const Path& p) {
  double s = 0.0;
  for (const auto& st : p.steps) s += st.step_cost;
  return s;
}

SearchNode node(Pose p, std::int32_t parent, double step) {
  SearchNode n;
  n.pose = p;
  n.parent = parent;
  n.step_cost = step;
  n.control = {1.0, 0.0};
  return n;
}

}  // namespace

TEST_CASE("heuristic examples") {
  const CostConfig cfg{0.0, 0.0, 1.0, 1.0};
  CHECK(heuristic(Pose(1, 2, 0.3), Pose(1, 2, 0.3), cfg) == 0.0);
  CHECK(heuristic(Pose(3, 4, 0), Pose(0, 0, 0), cfg) == doctest::Approx(5.0));
  CHECK(heuristic(Pose(0, 0, 1.5 * kPi), Pose(0, 0, 0), cfg) == doctest::Approx(kPi / 2));
  CostConfig weighted = cfg;
  weighted.heuristic_weight = 2.0;
  weighted.heading_weight = 0.0;
  CHECK(heuristic(Pose(3, 4, 1.0), Pose(0, 0, 0), weighted) == doctest::Approx(10.0));
}

TEST_CASE("goal-region heuristic is zero inside the tolerance and below the pose form") {
  const CostConfig cfg{};
  const GoalTolerance tol{1.0, kPi / 8};
  const Pose goal(10, 10, 0.5);
  CHECK(goal_region_heuristic(Pose(10.5, 10.2, 0.6), goal, tol, cfg) == 0.0);
  CHECK(goal_region_heuristic(Pose(13, 14, 0.5), goal, tol, cfg) == doctest::Approx(4.0));
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 500; ++i) {
    const Pose p(10 + u(rng), 10 + u(rng), u(rng));
    CHECK(goal_region_heuristic(p, goal, tol, cfg) <= heuristic(p, goal, cfg) + 1e-12);
  }
}

TEST_CASE("step_cost examples") {
  CostConfig cfg{0.5, 1.0, 1.0, 1.0};
  CHECK(step_cost(Pose(0, 0, 0), Pose(1, 0, 0), {1.0, 0.0}, cfg) == 1.0);
  cfg.reverse_penalty = 100.0;
  CHECK(step_cost(Pose(1, 0, 0), Pose(0, 0, 0), {-1.0, 0.0}, cfg) == 101.0);

  cfg = {2.0, 0.0, 1.0, 1.0};
  const Pose a(0, 0, 0.1);
  const Pose b(0.9, 0.3, 0.6);
  // Independent evaluation of the distance term.
  const double d = std::sqrt(0.81 + 0.09 + 0.25);
  CHECK(step_cost(a, b, {1.0, 0.5}, cfg) == doctest::Approx(d + 1.0));
  CHECK(step_cost(a, b, {1.0, -0.5}, cfg) == doctest::Approx(d + 1.0));
}

TEST_CASE("step_cost wraps the heading term") {
  const CostConfig cfg{0.0, 0.0, 1.0, 1.0};
  CHECK(step_cost(Pose(0, 0, 3.1), Pose(0, 0, -3.1), {1.0, 0.0}, cfg) ==
        doctest::Approx(kTwoPi - 6.2));
}

TEST_CASE("CostConfig rejects negative weights") {
  CHECK_THROWS_AS(CostConfig({-1.0, 0, 0, 0}).validate(), ConfigError);
  CHECK_THROWS_AS(CostConfig({0, 0, 0, NAN}).validate(), ConfigError);
  CHECK_NOTHROW(CostConfig({0, 1e9, 0, 0}).validate());
}

TEST_CASE("discrete keys") {
  const OccupancyGrid g(10, 10, 0.5);
  const VehicleSpec v = unit_vehicle();
  PlannerConfig cfg = PlannerConfig::defaults(v, MotionModel::Kinematic, 0.5);
  const SearchSpace s(g, v, cfg, Pose(1, 1, 0));
  CHECK(s.key_of(Pose(0.74, 1.25, 0.0)) == NodeKey{1, 2, 0});
  CHECK(s.key_of(Pose(1, 1, kPi)).theta == 8);
  CHECK(s.key_of(Pose(1, 1, -kPi + 1e-9)).theta == 8);
  CHECK(s.key_of(Pose(1, 1, -kPi / 2)).theta == 12);
  CHECK(s.key_of(Pose(1, 1, 0.19)).theta == 0);
  CHECK(s.key_of(Pose(1, 1, 0.2)).theta == 1);
  CHECK(s.key_count() == 10u * 10u * 16u);
  const Pose c = s.canonical_pose({3, 4, 4});
  CHECK(c.x() == doctest::Approx(1.75));
  CHECK(c.y() == doctest::Approx(2.25));
  CHECK(c.theta() == doctest::Approx(kPi / 2));
  CHECK(s.key_of(c) == NodeKey{3, 4, 4});
}

TEST_CASE("motion samples are at most half a cell apart") {
  const OccupancyGrid g(30, 30);
  VehicleSpec v;
  v.wheelbase = 2.0;
  v.footprint = {2.0, 1.0, 0.0};
  for (auto model : {MotionModel::Kinematic, MotionModel::Geometric}) {
    PlannerConfig cfg = PlannerConfig::defaults(v, model);
    cfg.controls.dt = 3.0;
    cfg.controls.arc_len = 3.0;
    const SearchSpace s(g, v, cfg, Pose(1, 1, 0));
    const Pose from(15, 15, 0.4);
    const double reach = std::hypot(1.0, 0.5);
    for (const auto& nb : neighbors(model, from, v, cfg.controls)) {
      const auto samples = s.motion_samples(from, nb.motion);
      REQUIRE_FALSE(samples.empty());
      CHECK(samples.back() == nb.motion.at(from, 1.0));
      Pose prev = from;
      for (const Pose& p : samples) {
        CHECK(std::hypot(p.x() - prev.x(), p.y() - prev.y()) <= 0.5 + 1e-9);
        CHECK(std::abs(angle_diff(p.theta(), prev.theta())) * reach <= 0.5 + 1e-9);
        prev = p;
      }
    }
  }
}

TEST_CASE("OpenFrontier pops minimal f with FIFO ties") {
  OpenFrontier open(8);
  CHECK(open.offer(0, 1.0, 5.0, 0));
  CHECK(open.offer(1, 1.0, 3.0, 1));
  CHECK(open.offer(2, 1.0, 3.0, 2));
  CHECK(open.offer(3, 1.0, 4.0, 3));
  CHECK(open.pop()->node == 1);
  CHECK(open.pop()->node == 2);
  CHECK(open.pop()->node == 3);
  CHECK(open.pop()->node == 0);
  CHECK_FALSE(open.pop().has_value());
}

TEST_CASE("OpenFrontier skips stale entries and only accepts strictly better g") {
  OpenFrontier open(4);
  CHECK(open.offer(0, 5.0, 6.0, 0));
  CHECK_FALSE(open.offer(0, 5.0, 6.0, 1));
  CHECK_FALSE(open.offer(0, 7.0, 6.0, 1));
  CHECK(open.offer(0, 3.0, 4.0, 2));
  auto e = open.pop();
  REQUIRE(e);
  CHECK(e->node == 2);
  CHECK(open.best_g(0) == 3.0);
  CHECK(open.closed(0));
  CHECK_FALSE(open.pop().has_value());  // the g = 5 entry is stale
  CHECK_FALSE(open.offer(0, 4.0, 4.0, 3));
  CHECK(open.offer(0, 2.0, 3.0, 4));
  CHECK(open.reopened() == 1);
  CHECK_FALSE(open.closed(0));
  CHECK(open.pop()->node == 4);
}

TEST_CASE("reconstruct_path") {
  std::vector<SearchNode> nodes;
  nodes.push_back(node(Pose(0, 0, 0), -1, 0.0));
  auto single = reconstruct_path(nodes, 0);
  REQUIRE(single.steps.size() == 1);
  CHECK(single.cost() == 0.0);
  CHECK(single.steps[0].control == Control{});

  nodes.push_back(node(Pose(1, 0, 0), 0, 1.0));
  nodes.push_back(node(Pose(2, 0, 0), 1, 1.5));
  nodes.push_back(node(Pose(5, 5, 0), 0, 9.0));  // unrelated branch
  auto p = reconstruct_path(nodes, 2);
  REQUIRE(p.steps.size() == 3);
  CHECK(p.steps[0].pose == Pose(0, 0, 0));
  CHECK(p.steps[2].pose == Pose(2, 0, 0));
  CHECK(p.steps[1].control == Control{1.0, 0.0});
  CHECK(p.cost() == doctest::Approx(2.5));
  CHECK(sum_step_costs(p) == doctest::Approx(p.cost()).epsilon(1e-12));

  CHECK_THROWS_AS(reconstruct_path(nodes, 9), InternalError);
  nodes[0].parent = 2;  // cycle
  CHECK_THROWS_AS(reconstruct_path(nodes, 2), InternalError);
  nodes[0].parent = 17;  // dangling
  CHECK_THROWS_AS(reconstruct_path(nodes, 2), InternalError);
}

TEST_CASE("plan: start inside the goal region") {
  const OccupancyGrid g(10, 10);
  const VehicleSpec v = unit_vehicle();
  const auto cfg = PlannerConfig::defaults(v, MotionModel::Kinematic);
  const auto r = plan(Pose(5, 5, 0), Pose(5.2, 5, 0.1), g, v, cfg);
  REQUIRE(r.found());
  CHECK(r.path.steps.size() == 1);
  CHECK(r.path.cost() == 0.0);
}

TEST_CASE("plan: straight line on a free 20x20 grid") {
  const OccupancyGrid g(20, 20);
  const VehicleSpec v = unit_vehicle();
  for (auto model : {MotionModel::Kinematic, MotionModel::Geometric}) {
    const auto cfg = PlannerConfig::defaults(v, model);
    const auto r = plan(Pose(2, 2, 0), Pose(17, 2, 0), g, v, cfg);
    REQUIRE(r.found());
    CHECK(r.path.reverse_steps() == 0);
    CHECK(r.path.cost() <= 15.0 * 1.15);
    if (model == MotionModel::Geometric) {
      // Steps of arc_len sqrt(2) stop inside the one-cell tolerance short of x = 17.
      CHECK(r.path.cost() >= 15.0 - cfg.goal_tolerance.position);
    } else {
      CHECK(r.path.cost() >= 15.0 - 1e-9);
      const auto ref = oracle::dijkstra_reference(Pose(2, 2, 0), Pose(17, 2, 0), g, v, cfg);
      REQUIRE(ref.found());
      CHECK(r.path.cost() == ref.cost);
    }
  }
}

TEST_CASE("plan: enclosed goal is unreachable") {
  const auto f = fixture_by_name("enclosed_goal");
  const auto r = plan(f.start, f.goal, f.grid(), f.vehicle, f.config);
  CHECK(r.status == PlanStatus::Unreachable);
  CHECK(r.path.steps.empty());
}

TEST_CASE("plan: errors") {
  std::vector<std::uint8_t> cells(100, 0);
  cells[5 * 10 + 5] = 1;
  const OccupancyGrid g(10, 10, 1.0, cells);
  const VehicleSpec v = unit_vehicle();
  auto cfg = PlannerConfig::defaults(v, MotionModel::Kinematic);
  CHECK_THROWS_AS(plan(Pose(5.5, 5.5, 0), Pose(2, 2, 0), g, v, cfg), StartInCollisionError);
  CHECK_THROWS_AS(plan(Pose(2, 2, 0), Pose(12, 2, 0), g, v, cfg), ConfigError);
  cfg.theta_bins = 0;
  CHECK_THROWS_AS(plan(Pose(2, 2, 0), Pose(8, 2, 0), g, v, cfg), ConfigError);
  cfg = PlannerConfig::defaults(v, MotionModel::Kinematic);
  cfg.max_expansions = 0;
  CHECK_THROWS_AS(plan(Pose(2, 2, 0), Pose(8, 2, 0), g, v, cfg), ConfigError);
  cfg = PlannerConfig::defaults(v, MotionModel::Kinematic);
  cfg.costs.reverse_penalty = -1;
  CHECK_THROWS_AS(plan(Pose(2, 2, 0), Pose(8, 2, 0), g, v, cfg), ConfigError);
}

TEST_CASE("plan: budget exhaustion is distinct and respects the budget") {
  const auto f = fixture_by_name("headings_down_kinematic");
  for (std::size_t budget : {1u, 10u, 100u}) {
    auto cfg = f.config;
    cfg.max_expansions = budget;
    const auto r = plan(f.start, f.goal, f.grid(), f.vehicle, cfg);
    CHECK(r.status == PlanStatus::BudgetExhausted);
    CHECK(r.expansions <= budget);
  }
  CHECK(to_string(PlanStatus::BudgetExhausted) != to_string(PlanStatus::Unreachable));
}

TEST_CASE("plan: fixture paths are sound and costs re-sum") {
  for (const auto& f : scenario_fixtures()) {
    for (auto state : {NodeState::Continuous, NodeState::Snapped}) {
      auto cfg = f.config;
      cfg.node_state = state;
      const auto grid = f.grid();
      const auto r = plan(f.start, f.goal, grid, f.vehicle, cfg);
      if (!r.found()) continue;
      INFO(f.name << " " << to_string(state));
      CHECK(r.path.steps.front().pose == f.start);
      CHECK(testsupport::reaches_goal(r.path, f.goal, cfg.goal_tolerance));
      CHECK(testsupport::colliding_poses(r.path, grid, f.vehicle, cfg) == 0);
      CHECK(sum_step_costs(r.path) == doctest::Approx(r.path.cost()).epsilon(1e-9));
      for (std::size_t i = 1; i < r.path.steps.size(); ++i) {
        const auto& s = r.path.steps[i];
        CHECK(s.step_cost == doctest::Approx(step_cost(r.path.steps[i - 1].pose, s.pose,
                                                       s.control, cfg.costs)));
      }
    }
  }
}

TEST_CASE("plan: snapped nodes sit on canonical poses") {
  const auto f = fixture_by_name("uturn_big");
  auto cfg = f.config;
  cfg.node_state = NodeState::Snapped;
  const auto grid = f.grid();
  const SearchSpace space(grid, f.vehicle, cfg, f.goal);
  const auto r = plan(f.start, f.goal, grid, f.vehicle, cfg);
  REQUIRE(r.found());
  for (std::size_t i = 1; i < r.path.steps.size(); ++i) {
    const Pose& p = r.path.steps[i].pose;
    CHECK(p == space.canonical_pose(space.key_of(p)));
  }
}

TEST_CASE("plan: identical inputs give bitwise-identical paths") {
  const auto f = fixture_by_name("dual_lane_len2");
  const auto grid = f.grid();
  const auto a = plan(f.start, f.goal, grid, f.vehicle, f.config);
  const auto b = plan(f.start, f.goal, grid, f.vehicle, f.config);
  REQUIRE(a.found());
  REQUIRE(a.path.steps.size() == b.path.steps.size());
  for (std::size_t i = 0; i < a.path.steps.size(); ++i) {
    CHECK(a.path.steps[i].pose == b.path.steps[i].pose);
    CHECK(a.path.steps[i].cumulative_cost == b.path.steps[i].cumulative_cost);
  }
  CHECK(a.expansions == b.expansions);
}

TEST_CASE("plan: cost is non-decreasing in the reverse penalty") {
  const double penalties[] = {0.0, 0.5, 1.0, 2.0, 10.0, 100.0};
  for (const char* name : {"reverse_corridor", "uturn_big", "uturn_small"}) {
    for (auto state : {NodeState::Continuous, NodeState::Snapped}) {
      const auto f = fixture_by_name(name);
      const auto grid = f.grid();
      double prev = 0.0;
      for (double pen : penalties) {
        auto cfg = f.config;
        cfg.node_state = state;
        cfg.costs.reverse_penalty = pen;
        cfg.costs.heuristic_weight = 0.0;
        const auto r = plan(f.start, f.goal, grid, f.vehicle, cfg);
        REQUIRE(r.found());
        INFO(name << " " << to_string(state) << " penalty " << pen);
        CHECK(r.path.cost() >= prev - 1e-9);
        prev = r.path.cost();
      }
    }
  }
}

TEST_CASE("plan: cost monotonicity on random small worlds") {
  std::mt19937 rng(32);
  std::bernoulli_distribution occ(0.15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const VehicleSpec v = unit_vehicle();
  int checked = 0;
  for (int world = 0; world < 30; ++world) {
    std::vector<std::uint8_t> cells(12 * 12);
    for (auto& c : cells) c = occ(rng);
    const OccupancyGrid g(12, 12, 1.0, cells);
    const Pose s(1 + 10 * u(rng), 1 + 10 * u(rng), kTwoPi * u(rng));
    const Pose t(1 + 10 * u(rng), 1 + 10 * u(rng), kTwoPi * u(rng));
    if (pose_in_collision(s, v.footprint, g, CollisionMode::Footprint)) continue;
    double prev = -1.0;
    for (double pen : {0.0, 1.0, 5.0, 50.0}) {
      auto cfg = PlannerConfig::defaults(v, MotionModel::Kinematic);
      cfg.node_state = NodeState::Snapped;
      cfg.theta_bins = 8;
      cfg.costs.reverse_penalty = pen;
      cfg.costs.heuristic_weight = 0.0;
      const auto r = plan(s, t, g, v, cfg);
      if (!r.found()) break;
      CHECK(r.path.cost() >= prev - 1e-9);
      prev = r.path.cost();
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("plan: a finite reverse penalty removes all reverse steps") {
  const auto f = fixture_by_name("uturn_big");
  const auto grid = f.grid();
  auto reverse_steps = [&](double pen) {
    auto cfg = f.config;
    cfg.costs.reverse_penalty = pen;
    const auto r = plan(f.start, f.goal, grid, f.vehicle, cfg);
    REQUIRE(r.found());
    return r.path.reverse_steps();
  };
  REQUIRE(reverse_steps(0.0) > 0);
  double lo = 0.0, hi = 1024.0;
  REQUIRE(reverse_steps(hi) == 0);
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    (reverse_steps(mid) == 0 ? hi : lo) = mid;
  }
  MESSAGE("reverse-free threshold near penalty " << hi);
  for (double pen : {hi, hi * 2, hi * 10, 1e6}) CHECK(reverse_steps(pen) == 0);
}

TEST_CASE("plan: penalties change the chosen maneuver") {
  const auto f = fixture_by_name("uturn_big");
  const auto grid = f.grid();
  auto cfg = f.config;
  cfg.costs.reverse_penalty = 0.0;
  const auto cheap = plan(f.start, f.goal, grid, f.vehicle, cfg);
  cfg.costs.reverse_penalty = 100.0;
  const auto costly = plan(f.start, f.goal, grid, f.vehicle, cfg);
  REQUIRE(cheap.found());
  REQUIRE(costly.found());
  CHECK(costly.path.reverse_steps() < cheap.path.reverse_steps());
}

TEST_CASE("node state names") {
  CHECK(to_string(NodeState::Snapped) == "snapped");
  CHECK(node_state_from_string("continuous") == NodeState::Continuous);
  CHECK_THROWS_AS(node_state_from_string("fuzzy"), ConfigError);
}
