#include "nhplan/search.hpp"

#include <algorithm>
#include <cmath>

namespace nhplan {

void CostConfig::validate() const {
  for (double w : {steer_weight, reverse_penalty, heading_weight, heuristic_weight}) {
    if (!(w >= 0.0) || std::isnan(w)) {
      throw ConfigError("CostConfig: weights must be non-negative");
    }
  }
}

std::string to_string(NodeState state) {
  return state == NodeState::Continuous ? "continuous" : "snapped";
}

NodeState node_state_from_string(const std::string& name) {
  if (name == "continuous") return NodeState::Continuous;
  if (name == "snapped") return NodeState::Snapped;
  throw ConfigError("unknown node state '" + name + "'");
}

PlannerConfig PlannerConfig::defaults(const VehicleSpec& spec, MotionModel model,
                                      double cell_size) {
  PlannerConfig cfg;
  cfg.model = model;
  cfg.controls = ControlGrid::defaults(spec, cell_size);
  cfg.goal_tolerance.position = cell_size;
  return cfg;
}

double pose_distance(const Pose& a, const Pose& b, double heading_weight) {
  const double dx = a.x() - b.x();
  const double dy = a.y() - b.y();
  const double dth = heading_weight * angle_diff(a.theta(), b.theta());
  return std::sqrt(dx * dx + dy * dy + dth * dth);
}

double heuristic(const Pose& pose, const Pose& goal, const CostConfig& cfg) {
  return cfg.heuristic_weight * pose_distance(pose, goal, cfg.heading_weight);
}

double goal_region_heuristic(const Pose& pose, const Pose& goal,
                             const GoalTolerance& tol, const CostConfig& cfg) {
  const double dpos = std::max(
      0.0, std::hypot(pose.x() - goal.x(), pose.y() - goal.y()) - tol.position);
  const double dth = cfg.heading_weight *
                     std::max(0.0, std::abs(angle_diff(pose.theta(), goal.theta())) -
                                       tol.heading);
  return cfg.heuristic_weight * std::sqrt(dpos * dpos + dth * dth);
}

double step_cost(const Pose& from, const Pose& to, const Control& ctrl,
                 const CostConfig& cfg) {
  double c = pose_distance(from, to, cfg.heading_weight) +
             cfg.steer_weight * std::abs(ctrl.delta);
  if (ctrl.reverse()) c += cfg.reverse_penalty;
  return c;
}

// ---------------------------------------------------------------------------

SearchSpace::SearchSpace(const OccupancyGrid& grid, const VehicleSpec& spec,
                         const PlannerConfig& cfg, const Pose& goal)
    : grid_(&grid), spec_(&spec), cfg_(&cfg), goal_(goal) {
  spec.validate();
  cfg.costs.validate();
  cfg.controls.validate(spec, cfg.model);
  if (cfg.theta_bins < 1) throw ConfigError("theta_bins must be at least 1");
  if (!(cfg.goal_tolerance.position >= 0.0) || !(cfg.goal_tolerance.heading >= 0.0)) {
    throw ConfigError("goal tolerance must be non-negative");
  }
  if (cfg.max_expansions == 0) throw ConfigError("max_expansions must be positive");
  bin_width_ = kTwoPi / cfg.theta_bins;
}

NodeKey SearchSpace::key_of(const Pose& pose) const {
  const int n = cfg_->theta_bins;
  int t = static_cast<int>(std::lround(pose.theta() / bin_width_)) % n;
  if (t < 0) t += n;
  return {grid_->cell_x(pose.x()), grid_->cell_y(pose.y()), t};
}

Pose SearchSpace::canonical_pose(const NodeKey& key) const {
  const double cs = grid_->cell_size();
  return Pose((key.x + 0.5) * cs, (key.y + 0.5) * cs, key.theta * bin_width_);
}

std::size_t SearchSpace::index_of(const NodeKey& key) const {
  return (static_cast<std::size_t>(key.y) * grid_->width() + key.x) * cfg_->theta_bins +
         key.theta;
}

std::size_t SearchSpace::key_count() const {
  return static_cast<std::size_t>(grid_->width()) * grid_->height() * cfg_->theta_bins;
}

bool SearchSpace::in_bounds(const Pose& pose) const {
  return pose.x() >= 0.0 && pose.y() >= 0.0 && pose.x() < grid_->world_width() &&
         pose.y() < grid_->world_height();
}

bool SearchSpace::in_collision(const Pose& pose) const {
  return !in_bounds(pose) ||
         pose_in_collision(pose, spec_->footprint, *grid_, cfg_->collision);
}

std::vector<Pose> SearchSpace::motion_samples(const Pose& from, const Motion& motion) const {
  const auto& fp = spec_->footprint;
  const double reach = std::hypot(std::abs(fp.ref_offset) + 0.5 * fp.length, 0.5 * fp.width);
  const double sweep = std::max(motion.travel_length(), motion.heading_sweep() * reach);
  const double spacing = 0.5 * grid_->cell_size();
  const int segments = std::max(1, static_cast<int>(std::ceil(sweep / spacing)));

  std::vector<Pose> out;
  out.reserve(segments);
  for (int i = 1; i < segments; ++i) {
    out.push_back(motion.at(from, static_cast<double>(i) / segments));
  }
  out.push_back(motion.at(from, 1.0));
  return out;
}

bool SearchSpace::motion_free(const Pose& from, const Motion& motion) const {
  for (const Pose& p : motion_samples(from, motion)) {
    if (in_collision(p)) return false;
  }
  return true;
}

bool SearchSpace::is_goal(const Pose& pose) const {
  const auto& tol = cfg_->goal_tolerance;
  return std::hypot(pose.x() - goal_.x(), pose.y() - goal_.y()) < tol.position &&
         std::abs(angle_diff(pose.theta(), goal_.theta())) <= tol.heading;
}

std::vector<SearchSpace::Edge> SearchSpace::successors(const Pose& pose) const {
  std::vector<Edge> out;
  const bool snapped = cfg_->node_state == NodeState::Snapped;
  for (auto& nb : neighbors(cfg_->model, pose, *spec_, cfg_->controls)) {
    if (!motion_free(pose, nb.motion)) continue;
    Pose to = nb.pose;
    if (snapped) {
      to = canonical_pose(key_of(nb.pose));
      if (in_collision(to)) continue;
    }
    const double c = step_cost(pose, to, nb.control, cfg_->costs);
    out.push_back({to, nb.control, nb.motion, c});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t Path::reverse_steps() const {
  return static_cast<std::size_t>(std::count_if(
      steps.begin(), steps.end(), [](const PathStep& s) { return s.control.reverse(); }));
}

double Path::positional_length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < steps.size(); ++i) len += steps[i].motion.travel_length();
  return len;
}

Path reconstruct_path(const std::vector<SearchNode>& nodes, std::size_t goal_index) {
  if (goal_index >= nodes.size()) throw InternalError("reconstruct_path: bad goal index");
  std::vector<std::size_t> chain;
  std::int64_t cur = static_cast<std::int64_t>(goal_index);
  while (cur >= 0) {
    if (chain.size() > nodes.size()) throw InternalError("reconstruct_path: cyclic parent chain");
    if (static_cast<std::size_t>(cur) >= nodes.size()) {
      throw InternalError("reconstruct_path: dangling parent link");
    }
    chain.push_back(static_cast<std::size_t>(cur));
    cur = nodes[static_cast<std::size_t>(cur)].parent;
  }
  std::reverse(chain.begin(), chain.end());

  Path path;
  path.steps.reserve(chain.size());
  double total = 0.0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const SearchNode& n = nodes[chain[i]];
    PathStep step;
    step.pose = n.pose;
    if (i > 0) {
      step.control = n.control;
      step.motion = n.motion;
      step.step_cost = n.step_cost;
      total += n.step_cost;
    }
    step.cumulative_cost = total;
    path.steps.push_back(step);
  }
  return path;
}

std::string to_string(PlanStatus status) {
  switch (status) {
    case PlanStatus::Found: return "found";
    case PlanStatus::Unreachable: return "unreachable";
    case PlanStatus::BudgetExhausted: return "budget";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

OpenFrontier::OpenFrontier(std::size_t key_count) : slots_(key_count) {}

bool OpenFrontier::offer(std::size_t key, double g, double f, std::int32_t node) {
  Slot& s = slots_[key];
  if (!(g < s.g)) return false;
  if (s.closed) {
    s.closed = false;
    ++reopened_;
  }
  s.g = g;
  s.node = node;
  heap_.push({f, seq_++, key, node});
  return true;
}

std::optional<OpenFrontier::Entry> OpenFrontier::pop() {
  while (!heap_.empty()) {
    Entry e = heap_.top();
    heap_.pop();
    Slot& s = slots_[e.key];
    if (s.node != e.node || s.closed) continue;
    s.closed = true;
    return e;
  }
  return std::nullopt;
}

PlanResult plan(const Pose& start, const Pose& goal, const OccupancyGrid& grid,
                const VehicleSpec& spec, const PlannerConfig& cfg) {
  const SearchSpace space(grid, spec, cfg, goal);
  if (!space.in_bounds(goal)) throw ConfigError("plan: goal outside the grid");
  if (space.in_collision(start)) throw StartInCollisionError("plan: start pose is in collision");

  auto h = [&](const Pose& p) {
    return goal_region_heuristic(p, goal, cfg.goal_tolerance, cfg.costs);
  };

  PlanResult result;
  std::vector<SearchNode> nodes;
  OpenFrontier open(space.key_count());

  const NodeKey start_key = space.key_of(start);
  nodes.push_back({start, start_key, 0.0, h(start), -1, {}, {}, 0.0});
  open.offer(space.index_of(start_key), 0.0, nodes[0].f, 0);

  while (auto entry = open.pop()) {
    const SearchNode current = nodes[static_cast<std::size_t>(entry->node)];
    if (space.is_goal(current.pose)) {
      result.status = PlanStatus::Found;
      result.path = reconstruct_path(nodes, static_cast<std::size_t>(entry->node));
      return result;
    }
    if (result.expansions >= cfg.max_expansions) {
      result.status = PlanStatus::BudgetExhausted;
      return result;
    }
    ++result.expansions;

    for (auto& edge : space.successors(current.pose)) {
      ++result.generated;
      const NodeKey key = space.key_of(edge.pose);
      const std::size_t idx = space.index_of(key);
      const double g = current.g + edge.cost;
      if (!(g < open.best_g(idx))) continue;
      const auto node_id = static_cast<std::int32_t>(nodes.size());
      const double f = g + h(edge.pose);
      nodes.push_back({edge.pose, key, g, f, entry->node, edge.control, edge.motion, edge.cost});
      open.offer(idx, g, f, node_id);
    }
  }
  result.status = PlanStatus::Unreachable;
  return result;
}

}  // namespace nhplan
