#pragma once

#include <optional>
#include <string>
#include <variant>

#include "nhplan/world.hpp"

namespace nhplan::cli {

/// Map loaded from a PGM file. load_scenario_file rewrites relative paths
/// against the directory of the scenario file.
struct PgmMap {
  std::string path;
  RasterImportConfig import;

  friend bool operator==(const PgmMap& a, const PgmMap& b) {
    return a.path == b.path && a.import.threshold == b.import.threshold &&
           a.import.invert == b.import.invert && a.import.cell_size == b.import.cell_size;
  }
};

using MapSource = std::variant<GridBuilder, PgmMap>;

/// Everything one planning run needs. Angles are radians in memory; the JSON
/// form uses degrees.
struct Scenario {
  std::string name;
  MapSource map = GridBuilder(1, 1);
  Pose start;
  Pose goal;
  VehicleSpec vehicle;
  PlannerConfig config;

  OccupancyGrid grid() const;
  double cell_size() const;
};

bool operator==(const Scenario& a, const Scenario& b);

/// Thrown for malformed or out-of-schema scenario documents.
class ScenarioError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Strict parse: unknown keys and wrong types are errors. Missing optional
/// sections fall back to the defaults for the given vehicle and cell size.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

/// Pretty-printed JSON that parse_scenario maps back to an equal Scenario.
std::string serialize_scenario(const Scenario& s);

Scenario scenario_from_fixture(const Fixture& f);

/// Degrees for the file boundary. The returned value converts back to exactly
/// `rad` whenever some double does.
double to_degrees(double rad);
double to_radians(double deg);

}  // namespace nhplan::cli
