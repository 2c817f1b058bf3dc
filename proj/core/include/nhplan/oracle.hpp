#pragma once

#include <cstddef>
#include <optional>

#include "nhplan/geometry.hpp"
#include "nhplan/search.hpp"
#include "nhplan/vehicle.hpp"

namespace nhplan::oracle {

/// Outcome of the brute-force reference search. `path` and `cost` are only
/// meaningful when status is Found.
struct OracleResult {
  PlanStatus status = PlanStatus::Unreachable;
  double cost = 0.0;
  Path path;
  std::size_t expanded = 0;

  bool found() const { return status == PlanStatus::Found; }
};

/// Uniform-cost search over the same SearchSpace the planner uses. The
/// heuristic weight in `cfg` is ignored. The frontier and closed-set
/// bookkeeping are written independently of nhplan::plan.
OracleResult dijkstra_reference(const Pose& start, const Pose& goal,
                                const OccupancyGrid& grid, const VehicleSpec& spec,
                                const PlannerConfig& cfg);

/// 8-connected shortest path between the cells holding `start` and `goal`,
/// midpoint occupancy only, diagonal steps cost sqrt(2) * cell_size. Returns
/// +infinity if the goal cell cannot be reached.
double holonomic_lower_bound(const OccupancyGrid& grid, Vec2 start, Vec2 goal);

}  // namespace nhplan::oracle
