#include "nhplan/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace nhplan {

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw ConfigError("normalize_angle: non-finite angle");
  }
  double r = std::remainder(theta, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double angle_diff(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("angle_diff: non-finite angle");
  }
  return normalize_angle(a - b);
}

Pose::Pose(double x, double y, double theta)
    : x_(x), y_(y), theta_(normalize_angle(theta)) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw ConfigError("Pose: non-finite position");
  }
}

void Footprint::validate() const {
  if (!(length > 0.0) || !(width > 0.0) || !std::isfinite(length) ||
      !std::isfinite(width) || !std::isfinite(ref_offset)) {
    throw ConfigError("Footprint: length and width must be positive and finite");
  }
}

double Footprint::half_diagonal() const {
  return 0.5 * std::hypot(length, width);
}

std::array<Vec2, 4> footprint_corners(const Pose& pose, const Footprint& fp) {
  const double c = std::cos(pose.theta());
  const double s = std::sin(pose.theta());
  const double cx = pose.x() + fp.ref_offset * c;
  const double cy = pose.y() + fp.ref_offset * s;
  const double hl = 0.5 * fp.length;
  const double hw = 0.5 * fp.width;
  // heading (c, s), left normal (-s, c)
  return {{
      {cx + hl * c - hw * s, cy + hl * s + hw * c},
      {cx + hl * c + hw * s, cy + hl * s - hw * c},
      {cx - hl * c + hw * s, cy - hl * s - hw * c},
      {cx - hl * c - hw * s, cy - hl * s + hw * c},
  }};
}

OccupancyGrid::OccupancyGrid(int width_cells, int height_cells, double cell_size)
    : OccupancyGrid(width_cells, height_cells, cell_size,
                    std::vector<std::uint8_t>(
                        static_cast<std::size_t>(std::max(width_cells, 0)) *
                            static_cast<std::size_t>(std::max(height_cells, 0)),
                        0)) {}

OccupancyGrid::OccupancyGrid(int width_cells, int height_cells, double cell_size,
                             std::vector<std::uint8_t> occupied)
    : width_(width_cells),
      height_(height_cells),
      cell_size_(cell_size),
      cells_(std::move(occupied)) {
  if (width_ <= 0 || height_ <= 0) {
    throw ConfigError("OccupancyGrid: dimensions must be positive");
  }
  if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_)) {
    throw ConfigError("OccupancyGrid: cell_size must be positive");
  }
  if (cells_.size() != static_cast<std::size_t>(width_) * height_) {
    throw ConfigError("OccupancyGrid: occupancy buffer size mismatch");
  }
  for (auto& c : cells_) c = c ? 1 : 0;
}

int OccupancyGrid::cell_x(double x) const {
  return static_cast<int>(std::floor(x / cell_size_));
}

int OccupancyGrid::cell_y(double y) const {
  return static_cast<int>(std::floor(y / cell_size_));
}

bool OccupancyGrid::occupied_at(Vec2 p) const {
  if (!(p.x >= 0.0 && p.y >= 0.0 && p.x < world_width() && p.y < world_height())) {
    return true;
  }
  return occupied(cell_x(p.x), cell_y(p.y));
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

std::string to_string(CollisionMode mode) {
  return mode == CollisionMode::Midpoint ? "midpoint" : "footprint";
}

CollisionMode collision_mode_from_string(const std::string& name) {
  if (name == "midpoint") return CollisionMode::Midpoint;
  if (name == "footprint") return CollisionMode::Footprint;
  throw ConfigError("unknown collision mode '" + name + "'");
}

namespace {

// Overlap shorter than this (relative to the cell size) is edge contact.
constexpr double kContactTolerance = 1e-9;

// Separating-axis test between an oriented rectangle and one axis-aligned
// cell. Only the four face normals need checking in 2D.
bool rect_overlaps_cell(Vec2 center, double c, double s, double half_len,
                        double half_wid, double cell_cx, double cell_cy,
                        double half_cell, double eps) {
  const double dx = center.x - cell_cx;
  const double dy = center.y - cell_cy;
  const double ac = std::abs(c);
  const double as = std::abs(s);

  if (std::abs(dx) >= half_len * ac + half_wid * as + half_cell - eps) return false;
  if (std::abs(dy) >= half_len * as + half_wid * ac + half_cell - eps) return false;
  const double cell_proj = half_cell * (ac + as);
  if (std::abs(dx * c + dy * s) >= half_len + cell_proj - eps) return false;
  if (std::abs(-dx * s + dy * c) >= half_wid + cell_proj - eps) return false;
  return true;
}

}  // namespace

bool pose_in_collision(const Pose& pose, const Footprint& fp,
                       const OccupancyGrid& grid, CollisionMode mode) {
  if (mode == CollisionMode::Midpoint) {
    return grid.occupied_at(pose.position());
  }

  const auto corners = footprint_corners(pose, fp);
  double min_x = corners[0].x, max_x = corners[0].x;
  double min_y = corners[0].y, max_y = corners[0].y;
  for (const auto& p : corners) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }

  const double cs = grid.cell_size();
  const double eps = kContactTolerance * cs;
  // Fast reject: the box leaves the world by more than edge contact.
  if (min_x < -eps || min_y < -eps || max_x > grid.world_width() + eps ||
      max_y > grid.world_height() + eps) {
    return true;
  }

  const double c = std::cos(pose.theta());
  const double s = std::sin(pose.theta());
  const Vec2 center{pose.x() + fp.ref_offset * c, pose.y() + fp.ref_offset * s};
  const double half_len = 0.5 * fp.length;
  const double half_wid = 0.5 * fp.width;
  const double half_cell = 0.5 * cs;

  const int ix0 = grid.cell_x(min_x), ix1 = grid.cell_x(max_x);
  const int iy0 = grid.cell_y(min_y), iy1 = grid.cell_y(max_y);
  for (int iy = iy0; iy <= iy1; ++iy) {
    for (int ix = ix0; ix <= ix1; ++ix) {
      if (!grid.occupied(ix, iy)) continue;
      if (rect_overlaps_cell(center, c, s, half_len, half_wid, (ix + 0.5) * cs,
                             (iy + 0.5) * cs, half_cell, eps)) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace nhplan
