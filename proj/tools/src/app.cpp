#include "nhplan/cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "nhplan/cli/render.hpp"
#include "nhplan/cli/scenario.hpp"
#include "nhplan/oracle.hpp"

namespace nhplan::cli {

namespace {

std::string shortest(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// "x,y,theta_deg"
Pose parse_pose_arg(const std::string& text, const char* flag) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    double v = 0.0;
    const char* b = part.data();
    const char* e = b + part.size();
    while (b < e && *b == ' ') ++b;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) {
      throw ConfigError(std::string(flag) + ": expected x,y,theta_deg, got '" + text + "'");
    }
    vals.push_back(v);
  }
  if (vals.size() != 3) {
    throw ConfigError(std::string(flag) + ": expected x,y,theta_deg, got '" + text + "'");
  }
  return Pose(vals[0], vals[1], to_radians(vals[2]));
}

struct Options {
  std::string scenario_file;
  std::string fixture;
  bool list_fixtures = false;
  bool all_fixtures = false;
  std::string out_dir;
  std::string map_file;
  double threshold = 0.5;
  bool invert = false;
  double cell_size = 1.0;
  std::string start;
  std::string goal;
  std::string model;
  std::optional<double> reverse_penalty;
  std::optional<double> steer_weight;
  std::optional<double> heading_weight;
  std::optional<double> heuristic_weight;
  std::optional<int> theta_bins;
  std::string collision;
  std::string node_state;
  std::optional<long long> max_expansions;
  std::string csv_out;
  std::string svg_out;
  int svg_every = 5;
  bool oracle = false;
  bool dump_scenario = false;
};

void apply_overrides(Scenario& s, const Options& o) {
  auto& cfg = s.config;
  if (!o.model.empty()) cfg.model = motion_model_from_string(o.model);
  if (o.reverse_penalty) cfg.costs.reverse_penalty = *o.reverse_penalty;
  if (o.steer_weight) cfg.costs.steer_weight = *o.steer_weight;
  if (o.heading_weight) cfg.costs.heading_weight = *o.heading_weight;
  if (o.heuristic_weight) cfg.costs.heuristic_weight = *o.heuristic_weight;
  if (o.theta_bins) cfg.theta_bins = *o.theta_bins;
  if (!o.collision.empty()) cfg.collision = collision_mode_from_string(o.collision);
  if (!o.node_state.empty()) cfg.node_state = node_state_from_string(o.node_state);
  if (o.max_expansions) {
    if (*o.max_expansions <= 0) throw ConfigError("--max-expansions must be positive");
    cfg.max_expansions = static_cast<std::size_t>(*o.max_expansions);
  }
  if (!o.start.empty()) s.start = parse_pose_arg(o.start, "--start");
  if (!o.goal.empty()) s.goal = parse_pose_arg(o.goal, "--goal");
}

Scenario base_scenario(const Options& o) {
  if (!o.scenario_file.empty()) {
    Scenario s = load_scenario_file(o.scenario_file);
    if (!o.map_file.empty()) s.map = PgmMap{o.map_file, {o.threshold, o.invert, o.cell_size}};
    return s;
  }
  if (!o.fixture.empty()) {
    Scenario s = scenario_from_fixture(fixture_by_name(o.fixture));
    if (!o.map_file.empty()) s.map = PgmMap{o.map_file, {o.threshold, o.invert, o.cell_size}};
    return s;
  }
  if (!o.map_file.empty()) {
    if (o.start.empty() || o.goal.empty()) {
      throw ConfigError("--map without --scenario needs --start and --goal");
    }
    Scenario s;
    s.name = std::filesystem::path(o.map_file).stem().string();
    s.map = PgmMap{o.map_file, {o.threshold, o.invert, o.cell_size}};
    s.config = PlannerConfig::defaults(s.vehicle, MotionModel::Kinematic, o.cell_size);
    return s;
  }
  throw ConfigError("nothing to plan: give --scenario, --fixture, --map or --all-fixtures");
}

struct Outcome {
  PlanResult result;
  double wall_ms = 0.0;
};

Outcome run_plan(const Scenario& s, const OccupancyGrid& grid) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  o.result = plan(s.start, s.goal, grid, s.vehicle, s.config);
  o.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

void write_artifacts(const Scenario& s, const OccupancyGrid& grid, const PlanResult& r,
                     const std::string& csv_path, const std::string& svg_path, int every) {
  if (!csv_path.empty() && r.found()) write_file(csv_path, path_to_csv(r.path));
  if (!svg_path.empty()) {
    SvgOptions opts;
    opts.footprint_every = every;
    write_file(svg_path,
               render_svg(grid, r.path, s.vehicle.footprint, s.start, s.goal, opts));
  }
}

std::string oracle_line(const Scenario& s, const OccupancyGrid& grid, const PlanResult& r) {
  const auto ref = oracle::dijkstra_reference(s.start, s.goal, grid, s.vehicle, s.config);
  const bool match = ref.status == r.status && (!r.found() || ref.cost == r.path.cost());
  return "oracle_status=" + to_string(ref.status) +
         " oracle_cost=" + shortest(ref.found() ? ref.cost : INFINITY) +
         " oracle_expanded=" + std::to_string(ref.expanded) +
         " match=" + (match ? "yes" : "no");
}

int run_all(const Options& o, std::ostream& out) {
  if (o.out_dir.empty()) throw ConfigError("--all-fixtures needs --out-dir");
  std::filesystem::create_directories(o.out_dir);
  for (const Fixture& f : scenario_fixtures()) {
    Scenario s = scenario_from_fixture(f);
    apply_overrides(s, o);
    const OccupancyGrid grid = s.grid();
    const Outcome oc = run_plan(s, grid);
    const std::string stem = (std::filesystem::path(o.out_dir) / f.name).string();
    write_artifacts(s, grid, oc.result, stem + ".csv", stem + ".svg", o.svg_every);
    out << "fixture=" << f.name << ' ' << summary_line(oc.result, oc.wall_ms) << '\n';
    if (o.oracle) out << "fixture=" << f.name << ' ' << oracle_line(s, grid, oc.result) << '\n';
  }
  return kExitFound;
}

int execute(const Options& o, std::ostream& out) {
  if (o.list_fixtures) {
    for (const Fixture& f : scenario_fixtures()) out << f.name << '\t' << f.description << '\n';
    return kExitFound;
  }
  if (o.all_fixtures) return run_all(o, out);

  Scenario s = base_scenario(o);
  apply_overrides(s, o);
  if (o.dump_scenario) {
    out << serialize_scenario(s);
    return kExitFound;
  }
  const OccupancyGrid grid = s.grid();
  const Outcome oc = run_plan(s, grid);
  write_artifacts(s, grid, oc.result, o.csv_out, o.svg_out, o.svg_every);
  out << summary_line(oc.result, oc.wall_ms) << '\n';
  if (o.oracle) out << oracle_line(s, grid, oc.result) << '\n';
  return exit_code_for(oc.result.status);
}

}  // namespace

int exit_code_for(PlanStatus status) {
  switch (status) {
    case PlanStatus::Found: return kExitFound;
    case PlanStatus::Unreachable: return kExitUnreachable;
    case PlanStatus::BudgetExhausted: return kExitBudget;
  }
  return kExitConfigError;
}

std::string summary_line(const PlanResult& result, double wall_ms) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", wall_ms);
  return "status=" + to_string(result.status) +
         " cost=" + shortest(result.found() ? result.path.cost() : INFINITY) +
         " expansions=" + std::to_string(result.expansions) +
         " reverse_step_count=" + std::to_string(result.path.reverse_steps()) + " wall_ms=" + ms;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Footprint-aware non-holonomic A* planner"};
  app.name("nhplan");

  app.add_option("--scenario", o.scenario_file, "Scenario JSON file");
  app.add_option("--fixture", o.fixture, "Built-in fixture name");
  app.add_flag("--list-fixtures", o.list_fixtures, "List built-in fixtures");
  app.add_flag("--all-fixtures", o.all_fixtures, "Run every fixture into --out-dir");
  app.add_option("--out-dir", o.out_dir, "Artifact directory for --all-fixtures");
  app.add_option("--map", o.map_file, "PGM map (replaces the scenario map)");
  app.add_option("--threshold", o.threshold, "PGM occupancy threshold in [0, 1]");
  app.add_flag("--invert", o.invert, "Treat bright PGM pixels as occupied");
  app.add_option("--cell-size", o.cell_size, "World size of one PGM pixel");
  app.add_option("--start", o.start, "Start pose x,y,theta_deg");
  app.add_option("--goal", o.goal, "Goal pose x,y,theta_deg");
  app.add_option("--model", o.model, "kinematic or geometric");
  app.add_option("--reverse-penalty", o.reverse_penalty, "Cost added per reverse step");
  app.add_option("--steer-weight", o.steer_weight, "Cost per radian of steering per step");
  app.add_option("--heading-weight", o.heading_weight, "Weight of the heading term");
  app.add_option("--heuristic-weight", o.heuristic_weight, "0 gives uniform-cost search");
  app.add_option("--theta-bins", o.theta_bins, "Heading bins");
  app.add_option("--collision", o.collision, "footprint or midpoint");
  app.add_option("--node-state", o.node_state, "continuous or snapped");
  app.add_option("--max-expansions", o.max_expansions, "Expansion budget");
  app.add_option("--out", o.csv_out, "Write the path as CSV");
  app.add_option("--svg", o.svg_out, "Write an SVG figure");
  app.add_option("--svg-every", o.svg_every, "Draw the footprint at every k-th pose")
      ->check(CLI::PositiveNumber);
  app.add_flag("--oracle", o.oracle, "Also run the Dijkstra reference and compare");
  app.add_flag("--dump-scenario", o.dump_scenario, "Print the resolved scenario as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitFound;
  } catch (const CLI::ParseError& e) {
    err << "nhplan: " << e.what() << '\n';
    return kExitConfigError;
  }

  // Configuration, parse, start-collision and I/O failures all map to 1.
  try {
    return execute(o, out);
  } catch (const std::exception& e) {
    err << "nhplan: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace nhplan::cli
