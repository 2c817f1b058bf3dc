#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhplan/geometry.hpp"
#include "nhplan/vehicle.hpp"

namespace nhplan {

/// Weights of the path cost and heuristic. All must be non-negative.
struct CostConfig {
  double steer_weight = 0.5;     // cost per radian of |delta| per step
  double reverse_penalty = 1.0;  // added once per reverse step
  double heading_weight = 1.0;   // scales the heading term of dist and h
  double heuristic_weight = 1.0; // 0 turns the search into Dijkstra

  void validate() const;
};

/// Goal region: reference point within `position` (world units) of the goal
/// and wrapped heading error within `heading` radians.
struct GoalTolerance {
  double position = 1.0;
  double heading = kPi / 8.0;
};

/// How a search node's pose relates to its discrete key. Continuous keeps the
/// exact pose that first reached the key with the best cost. Snapped replaces
/// every non-start pose with the key's canonical pose (cell center, bin
/// heading), which makes the successor graph independent of expansion order.
enum class NodeState { Continuous, Snapped };

std::string to_string(NodeState state);
NodeState node_state_from_string(const std::string& name);

struct PlannerConfig {
  MotionModel model = MotionModel::Kinematic;
  NodeState node_state = NodeState::Continuous;
  ControlGrid controls;
  CostConfig costs;
  int theta_bins = 16;
  CollisionMode collision = CollisionMode::Footprint;
  GoalTolerance goal_tolerance;
  std::size_t max_expansions = 200000;

  /// Fills `controls` from ControlGrid::defaults and scales the goal position
  /// tolerance to one cell.
  static PlannerConfig defaults(const VehicleSpec& spec, MotionModel model,
                                double cell_size = 1.0);
};

/// Raised by plan() when the start pose itself collides.
class StartInCollisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a parent chain is broken or cyclic. Never expected.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct NodeKey {
  int x = 0;
  int y = 0;
  int theta = 0;

  friend bool operator==(const NodeKey&, const NodeKey&) = default;
  friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
};

/// L2 distance over (x, y, w * wrapped heading difference).
double pose_distance(const Pose& a, const Pose& b, double heading_weight);

/// Heading-aware estimate of the remaining cost:
/// heuristic_weight * sqrt(dx^2 + dy^2 + (w * wrapped dtheta)^2).
double heuristic(const Pose& pose, const Pose& goal, const CostConfig& cfg);

/// Same metric measured to the goal region instead of the goal pose. This is
/// what plan() uses: it stays a lower bound on the dist term when the search
/// stops inside the tolerance.
double goal_region_heuristic(const Pose& pose, const Pose& goal,
                             const GoalTolerance& tol, const CostConfig& cfg);

/// dist(from, to) + steer_weight * |delta| + reverse_penalty if v < 0.
double step_cost(const Pose& from, const Pose& to, const Control& ctrl,
                 const CostConfig& cfg);

/// The discretized, collision-filtered successor graph shared by the A*
/// planner and the reference oracle.
class SearchSpace {
 public:
  struct Edge {
    Pose pose;
    Control control;
    Motion motion;
    double cost = 0.0;
  };

  SearchSpace(const OccupancyGrid& grid, const VehicleSpec& spec,
              const PlannerConfig& cfg, const Pose& goal);

  NodeKey key_of(const Pose& pose) const;
  /// Cell center and bin-center heading of a key.
  Pose canonical_pose(const NodeKey& key) const;
  /// Dense index of a key; keys must come from in-bounds poses.
  std::size_t index_of(const NodeKey& key) const;
  std::size_t key_count() const;
  bool in_bounds(const Pose& pose) const;

  bool in_collision(const Pose& pose) const;
  /// Poses visited along a motion, spaced at most half a cell apart (measured
  /// on the reference point and on the swept footprint corners), endpoint
  /// inclusive and start exclusive.
  std::vector<Pose> motion_samples(const Pose& from, const Motion& motion) const;
  bool motion_free(const Pose& from, const Motion& motion) const;
  bool is_goal(const Pose& pose) const;

  std::vector<Edge> successors(const Pose& pose) const;

  const OccupancyGrid& grid() const { return *grid_; }
  const VehicleSpec& vehicle() const { return *spec_; }
  const PlannerConfig& config() const { return *cfg_; }
  const Pose& goal() const { return goal_; }

 private:
  const OccupancyGrid* grid_;
  const VehicleSpec* spec_;
  const PlannerConfig* cfg_;
  Pose goal_;
  double bin_width_;
};

/// Arena record of one accepted search state. `parent` indexes the same
/// arena; -1 marks the start.
struct SearchNode {
  Pose pose;
  NodeKey key;
  double g = 0.0;
  double f = 0.0;
  std::int32_t parent = -1;
  Control control;
  Motion motion;
  double step_cost = 0.0;
};

struct PathStep {
  Pose pose;
  Control control;  // {0, 0} for the first step
  Motion motion;    // motion from the previous pose
  double step_cost = 0.0;
  double cumulative_cost = 0.0;
};

struct Path {
  std::vector<PathStep> steps;

  double cost() const { return steps.empty() ? 0.0 : steps.back().cumulative_cost; }
  std::size_t reverse_steps() const;
  /// Length travelled by the reference point.
  double positional_length() const;
};

/// Walks parent links from `goal_index` back to the start.
Path reconstruct_path(const std::vector<SearchNode>& nodes, std::size_t goal_index);

enum class PlanStatus { Found, Unreachable, BudgetExhausted };

std::string to_string(PlanStatus status);

struct PlanResult {
  PlanStatus status = PlanStatus::Unreachable;
  Path path;
  std::size_t expansions = 0;
  std::size_t generated = 0;

  bool found() const { return status == PlanStatus::Found; }
};

/// Min-f priority queue with a dense membership index over node keys.
/// Equal f pops in insertion order. Offers that do not strictly lower a key's
/// best g are refused; superseded heap entries are skipped on pop.
class OpenFrontier {
 public:
  struct Entry {
    double f;
    std::uint64_t seq;
    std::size_t key;
    std::int32_t node;
  };

  explicit OpenFrontier(std::size_t key_count);

  bool offer(std::size_t key, double g, double f, std::int32_t node);
  std::optional<Entry> pop();
  bool empty() const { return heap_.empty(); }

  double best_g(std::size_t key) const { return slots_[key].g; }
  bool closed(std::size_t key) const { return slots_[key].closed; }
  std::size_t reopened() const { return reopened_; }

 private:
  struct Slot {
    double g = std::numeric_limits<double>::infinity();
    std::int32_t node = -1;
    bool closed = false;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.f != b.f) return a.f > b.f;
      return a.seq > b.seq;
    }
  };

  std::vector<Slot> slots_;
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::uint64_t seq_ = 0;
  std::size_t reopened_ = 0;
};

/// Enhanced A* over the non-holonomic successor graph.
PlanResult plan(const Pose& start, const Pose& goal, const OccupancyGrid& grid,
                const VehicleSpec& spec, const PlannerConfig& cfg);

}  // namespace nhplan
