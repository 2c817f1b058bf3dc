#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nhplan/geometry.hpp"
#include "nhplan/search.hpp"
#include "nhplan/vehicle.hpp"

namespace nhplan {

// ---------------------------------------------------------------------------
// Programmatic grids

/// Filled cell rectangle covering columns [x0, x1) and rows [y0, y1).
struct RectShape {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  friend bool operator==(const RectShape&, const RectShape&) = default;
};

/// Filled disc in cell coordinates; a cell is covered when its center lies
/// within `radius` of (cx, cy).
struct CircleShape {
  double cx = 0.0, cy = 0.0, radius = 0.0;
  friend bool operator==(const CircleShape&, const CircleShape&) = default;
};

/// Frame of `thickness` cells along all four grid edges.
struct BorderShape {
  int thickness = 1;
  friend bool operator==(const BorderShape&, const BorderShape&) = default;
};

using Shape = std::variant<RectShape, CircleShape, BorderShape>;

/// Accumulates obstacle shapes; the built occupancy is their union, so the
/// order of additions does not matter.
class GridBuilder {
 public:
  GridBuilder(int width_cells, int height_cells, double cell_size = 1.0);

  GridBuilder& rect(int x0, int y0, int x1, int y1);
  GridBuilder& circle(double cx, double cy, double radius);
  GridBuilder& border(int thickness = 1);
  GridBuilder& add(const Shape& shape);

  /// Throws ConfigError if a shape covers no in-bounds cell.
  OccupancyGrid build() const;

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  const std::vector<Shape>& shapes() const { return shapes_; }

  friend bool operator==(const GridBuilder&, const GridBuilder&) = default;

 private:
  int width_;
  int height_;
  double cell_size_;
  std::vector<Shape> shapes_;
};

// ---------------------------------------------------------------------------
// PGM ingestion

enum class PgmErrorKind { UnsupportedMagic, MalformedHeader, TruncatedPayload, BadPixel };

class PgmError : public std::runtime_error {
 public:
  PgmError(PgmErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  PgmErrorKind kind() const { return kind_; }

 private:
  PgmErrorKind kind_;
};

struct RasterImportConfig {
  double threshold = 0.5;  // luminance fraction below which a pixel is occupied
  bool invert = false;
  double cell_size = 1.0;

  void validate() const;
};

/// Grayscale raster as stored in the file: row 0 is the top image row.
struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;  // row-major, top row first
};

/// Parses binary (P5) or plain (P2) PGM, including `#` comments in the header.
PgmImage parse_pgm(std::span<const std::uint8_t> bytes);
PgmImage parse_pgm(std::string_view bytes);

/// Image row 0 becomes the top grid row (largest y).
OccupancyGrid load_raster(std::span<const std::uint8_t> bytes, const RasterImportConfig& cfg);
OccupancyGrid load_raster(std::string_view bytes, const RasterImportConfig& cfg);
OccupancyGrid load_raster_file(const std::string& path, const RasterImportConfig& cfg);

/// Occupied cells as 0, free cells as 255, top grid row first.
std::string write_pgm(const OccupancyGrid& grid, bool plain = false);

// ---------------------------------------------------------------------------
// Scenario fixtures

/// One planning problem: map, endpoints, vehicle and planner configuration.
struct Fixture {
  std::string name;
  std::string description;
  GridBuilder map;
  Pose start;
  Pose goal;
  VehicleSpec vehicle;
  PlannerConfig config;

  OccupancyGrid grid() const { return map.build(); }
};

/// Named scenarios, in a fixed order.
std::vector<Fixture> scenario_fixtures();

/// Looks a fixture up by name; throws ConfigError if unknown.
Fixture fixture_by_name(const std::string& name);

}  // namespace nhplan
