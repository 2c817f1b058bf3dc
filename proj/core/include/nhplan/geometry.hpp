#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhplan {

/// Raised when a caller supplies an invalid parameter (non-finite angle,
/// degenerate footprint, malformed vehicle or search configuration).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double theta);

/// Shortest signed rotation taking heading b onto heading a, in (-pi, pi].
double angle_diff(double a, double b);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Continuous vehicle configuration. The heading is kept normalized.
class Pose {
 public:
  Pose() = default;
  Pose(double x, double y, double theta);

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }
  Vec2 position() const { return {x_, y_}; }

  friend bool operator==(const Pose&, const Pose&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

/// Rectangular body. `ref_offset` is the signed distance, along the heading,
/// from the pose reference point to the rectangle center.
struct Footprint {
  double length = 1.0;
  double width = 0.5;
  double ref_offset = 0.0;

  void validate() const;
  double half_diagonal() const;
};

/// Corners in the order front-left, front-right, rear-right, rear-left.
std::array<Vec2, 4> footprint_corners(const Pose& pose, const Footprint& fp);

/// Binary occupancy over square cells. Cell (i, j) covers
/// [i*cell_size, (i+1)*cell_size) x [j*cell_size, (j+1)*cell_size);
/// everything outside the grid counts as occupied.
class OccupancyGrid {
 public:
  OccupancyGrid(int width_cells, int height_cells, double cell_size = 1.0);
  OccupancyGrid(int width_cells, int height_cells, double cell_size,
                std::vector<std::uint8_t> occupied);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  double world_width() const { return width_ * cell_size_; }
  double world_height() const { return height_ * cell_size_; }

  bool in_bounds(int ix, int iy) const {
    return ix >= 0 && iy >= 0 && ix < width_ && iy < height_;
  }
  /// Out-of-bounds cells report occupied.
  bool occupied(int ix, int iy) const {
    return !in_bounds(ix, iy) ||
           cells_[static_cast<std::size_t>(iy) * width_ + ix] != 0;
  }
  bool occupied_at(Vec2 p) const;
  int cell_x(double x) const;
  int cell_y(double y) const;

  std::size_t occupied_count() const;
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  int width_;
  int height_;
  double cell_size_;
  std::vector<std::uint8_t> cells_;
};

enum class CollisionMode { Midpoint, Footprint };

std::string to_string(CollisionMode mode);
CollisionMode collision_mode_from_string(const std::string& name);

/// Midpoint mode tests only the cell holding the reference point. Footprint
/// mode reports a hit when the rectangle interior overlaps any occupied or
/// out-of-bounds cell by a positive area (edge contact is not a hit).
bool pose_in_collision(const Pose& pose, const Footprint& fp,
                       const OccupancyGrid& grid, CollisionMode mode);

}  // namespace nhplan
