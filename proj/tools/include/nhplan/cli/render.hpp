#pragma once

#include <optional>
#include <string>

#include "nhplan/search.hpp"

namespace nhplan::cli {

/// step_index,x,y,theta_rad,v,delta_rad,step_cost,cumulative_cost with a
/// header row. Numbers use the shortest round-trip decimal form.
std::string path_to_csv(const Path& path);

struct SvgOptions {
  double scale = 20.0;      // pixels per world unit
  int footprint_every = 5;  // draw the body at every k-th pose and the last
};

/// SVG 1.1 figure: occupied cells, path polyline, footprints, start and goal
/// arrows when given. World y points up. Output depends only on the arguments.
std::string render_svg(const OccupancyGrid& grid, const Path& path, const Footprint& footprint,
                       const std::optional<Pose>& start = std::nullopt,
                       const std::optional<Pose>& goal = std::nullopt,
                       const SvgOptions& opts = {});

/// Writes `text` to `path`; throws std::runtime_error if the file cannot be
/// written.
void write_file(const std::string& path, const std::string& text);

}  // namespace nhplan::cli
