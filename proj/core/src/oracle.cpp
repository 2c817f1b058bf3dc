#include "nhplan/oracle.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace nhplan::oracle {

namespace {

struct Record {
  Pose pose;
  double g;
  long parent;  // index into the record list
  Control control;
  Motion motion;
  double step_cost;
};

}  // namespace

OracleResult dijkstra_reference(const Pose& start, const Pose& goal,
                                const OccupancyGrid& grid, const VehicleSpec& spec,
                                const PlannerConfig& cfg) {
  const SearchSpace space(grid, spec, cfg, goal);
  if (!space.in_bounds(goal)) throw ConfigError("dijkstra_reference: goal outside the grid");
  if (space.in_collision(start)) {
    throw StartInCollisionError("dijkstra_reference: start pose is in collision");
  }

  std::vector<Record> records;
  std::map<NodeKey, long> best;  // key -> record currently holding that key
  std::set<NodeKey> done;
  std::set<std::pair<double, long>> queue;  // (g, record), record id breaks ties

  records.push_back({start, 0.0, -1, {}, {}, 0.0});
  best.emplace(space.key_of(start), 0);
  queue.emplace(0.0, 0);

  OracleResult out;
  while (!queue.empty()) {
    const auto [g, id] = *queue.begin();
    queue.erase(queue.begin());
    const Record rec = records[static_cast<std::size_t>(id)];
    const NodeKey key = space.key_of(rec.pose);
    done.insert(key);

    if (space.is_goal(rec.pose)) {
      std::vector<SearchNode> chain;
      chain.reserve(records.size());
      for (const auto& r : records) {
        chain.push_back({r.pose, space.key_of(r.pose), r.g, r.g,
                         static_cast<std::int32_t>(r.parent), r.control, r.motion,
                         r.step_cost});
      }
      out.status = PlanStatus::Found;
      out.path = reconstruct_path(chain, static_cast<std::size_t>(id));
      out.cost = rec.g;
      return out;
    }
    if (out.expanded >= cfg.max_expansions) {
      out.status = PlanStatus::BudgetExhausted;
      return out;
    }
    ++out.expanded;

    for (auto& edge : space.successors(rec.pose)) {
      const NodeKey nk = space.key_of(edge.pose);
      if (done.count(nk)) continue;
      const double ng = g + edge.cost;
      auto it = best.find(nk);
      if (it != best.end()) {
        const double old = records[static_cast<std::size_t>(it->second)].g;
        if (!(ng < old)) continue;
        queue.erase({old, it->second});
      }
      const long nid = static_cast<long>(records.size());
      records.push_back({edge.pose, ng, id, edge.control, edge.motion, edge.cost});
      best[nk] = nid;
      queue.emplace(ng, nid);
    }
  }
  out.status = PlanStatus::Unreachable;
  return out;
}

double holonomic_lower_bound(const OccupancyGrid& grid, Vec2 start, Vec2 goal) {
  const int sx = grid.cell_x(start.x), sy = grid.cell_y(start.y);
  const int gx = grid.cell_x(goal.x), gy = grid.cell_y(goal.y);
  if (grid.occupied(sx, sy) || grid.occupied(gx, gy)) {
    throw ConfigError("holonomic_lower_bound: start and goal must lie in free cells");
  }
  const double inf = std::numeric_limits<double>::infinity();
  const int w = grid.width();
  std::vector<double> dist(static_cast<std::size_t>(w) * grid.height(), inf);
  auto at = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };

  const double cs = grid.cell_size();
  const double diag = std::sqrt(2.0) * cs;
  std::set<std::pair<double, std::size_t>> queue;
  dist[at(sx, sy)] = 0.0;
  queue.emplace(0.0, at(sx, sy));
  while (!queue.empty()) {
    const auto [d, idx] = *queue.begin();
    queue.erase(queue.begin());
    const int x = static_cast<int>(idx % w);
    const int y = static_cast<int>(idx / w);
    if (x == gx && y == gy) return d;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (grid.occupied(x + dx, y + dy)) continue;
        const double nd = d + ((dx != 0 && dy != 0) ? diag : cs);
        const std::size_t n = at(x + dx, y + dy);
        if (nd < dist[n]) {
          if (dist[n] < inf) queue.erase({dist[n], n});
          dist[n] = nd;
          queue.emplace(nd, n);
        }
      }
    }
  }
  return inf;
}

}  // namespace nhplan::oracle
