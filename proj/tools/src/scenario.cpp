#include "nhplan/cli/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>

#include "json.hpp"

namespace nhplan::cli {

using nlohmann::json;

double to_radians(double deg) { return deg * kPi / 180.0; }

double to_degrees(double rad) {
  const double guess = rad * 180.0 / kPi;
  if (to_radians(guess) == rad) return guess;
  double up = guess, down = guess;
  for (int i = 0; i < 8; ++i) {
    up = std::nextafter(up, INFINITY);
    down = std::nextafter(down, -INFINITY);
    if (to_radians(up) == rad) return up;
    if (to_radians(down) == rad) return down;
  }
  return guess;
}

OccupancyGrid Scenario::grid() const {
  if (const auto* b = std::get_if<GridBuilder>(&map)) return b->build();
  const auto& pgm = std::get<PgmMap>(map);
  return load_raster_file(pgm.path, pgm.import);
}

double Scenario::cell_size() const {
  if (const auto* b = std::get_if<GridBuilder>(&map)) return b->cell_size();
  return std::get<PgmMap>(map).import.cell_size;
}

namespace {

bool same(const VehicleSpec& a, const VehicleSpec& b) {
  return a.wheelbase == b.wheelbase && a.v_max == b.v_max && a.delta_max == b.delta_max &&
         a.footprint.length == b.footprint.length && a.footprint.width == b.footprint.width &&
         a.footprint.ref_offset == b.footprint.ref_offset;
}

bool same(const PlannerConfig& a, const PlannerConfig& b) {
  const auto& ca = a.costs;
  const auto& cb = b.costs;
  return a.model == b.model && a.node_state == b.node_state &&
         a.controls.v_samples == b.controls.v_samples &&
         a.controls.delta_samples == b.controls.delta_samples &&
         a.controls.dt == b.controls.dt && a.controls.arc_len == b.controls.arc_len &&
         a.controls.extra_radii == b.controls.extra_radii &&
         ca.steer_weight == cb.steer_weight && ca.reverse_penalty == cb.reverse_penalty &&
         ca.heading_weight == cb.heading_weight && ca.heuristic_weight == cb.heuristic_weight &&
         a.theta_bins == b.theta_bins && a.collision == b.collision &&
         a.goal_tolerance.position == b.goal_tolerance.position &&
         a.goal_tolerance.heading == b.goal_tolerance.heading &&
         a.max_expansions == b.max_expansions;
}

// Reader over one JSON object that remembers which keys were consumed, so
// leftovers can be reported as unknown.
class Fields {
 public:
  Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail("expected an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& raw(const char* key) {
    if (!j_.contains(key)) fail(std::string("missing key '") + key + "'");
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const char* key) {
    const json& v = raw(key);
    if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
    return v.get<double>();
  }
  double number(const char* key, double fallback) { return has(key) ? number(key) : fallback; }

  long long integer(const char* key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) fail(std::string("'") + key + "' must be an integer");
    return v.get<long long>();
  }

  bool boolean(const char* key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) fail(std::string("'") + key + "' must be true or false");
    return v.get<bool>();
  }

  std::string string(const char* key) {
    const json& v = raw(key);
    if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const char* key) {
    const json& v = raw(key);
    if (!v.is_array()) fail(std::string("'") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(std::string("'") + key + "' must hold numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  Fields object(const char* key) { return Fields(raw(key), where_ + "." + key); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail("unknown key '" + it.key() + "'");
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ScenarioError("scenario " + where_ + ": " + msg);
  }

  const std::string& where() const { return where_; }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

Pose read_pose(Fields f) {
  const double x = f.number("x");
  const double y = f.number("y");
  const double th = to_radians(f.number("theta_deg"));
  f.finish();
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(th)) f.fail("non-finite pose");
  return Pose(x, y, th);
}

Shape read_shape(Fields f) {
  const std::string type = f.string("type");
  Shape out;
  if (type == "rect") {
    out = RectShape{static_cast<int>(f.integer("x0")), static_cast<int>(f.integer("y0")),
                    static_cast<int>(f.integer("x1")), static_cast<int>(f.integer("y1"))};
  } else if (type == "circle") {
    out = CircleShape{f.number("cx"), f.number("cy"), f.number("radius")};
  } else if (type == "border") {
    out = BorderShape{static_cast<int>(f.integer("thickness"))};
  } else {
    f.fail("unknown shape type '" + type + "'");
  }
  f.finish();
  return out;
}

MapSource read_map(Fields f) {
  if (f.has("pgm")) {
    PgmMap m;
    m.path = f.string("pgm");
    m.import.threshold = f.number("threshold", m.import.threshold);
    m.import.invert = f.boolean("invert", m.import.invert);
    m.import.cell_size = f.number("cell_size", m.import.cell_size);
    f.finish();
    m.import.validate();
    return m;
  }
  const auto w = f.integer("width");
  const auto h = f.integer("height");
  const double cs = f.number("cell_size", 1.0);
  if (w <= 0 || h <= 0 || w > 100000 || h > 100000) f.fail("width and height must be positive");
  GridBuilder b(static_cast<int>(w), static_cast<int>(h), cs);
  if (f.has("shapes")) {
    const json& shapes = f.raw("shapes");
    if (!shapes.is_array()) f.fail("'shapes' must be an array");
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      b.add(read_shape(Fields(shapes[i], f.where() + ".shapes[" + std::to_string(i) + "]")));
    }
  }
  f.finish();
  return b;
}

VehicleSpec read_vehicle(Fields f) {
  VehicleSpec v;
  v.wheelbase = f.number("wheelbase", v.wheelbase);
  v.footprint.length = f.number("length", v.footprint.length);
  v.footprint.width = f.number("width", v.footprint.width);
  v.footprint.ref_offset = f.number("ref_offset", v.footprint.ref_offset);
  v.v_max = f.number("v_max", v.v_max);
  if (f.has("delta_max_deg")) v.delta_max = to_radians(f.number("delta_max_deg"));
  f.finish();
  v.validate();
  return v;
}

json pose_json(const Pose& p) {
  return {{"x", p.x()}, {"y", p.y()}, {"theta_deg", to_degrees(p.theta())}};
}

json shape_json(const Shape& s) {
  if (const auto* r = std::get_if<RectShape>(&s)) {
    return {{"type", "rect"}, {"x0", r->x0}, {"y0", r->y0}, {"x1", r->x1}, {"y1", r->y1}};
  }
  if (const auto* c = std::get_if<CircleShape>(&s)) {
    return {{"type", "circle"}, {"cx", c->cx}, {"cy", c->cy}, {"radius", c->radius}};
  }
  return {{"type", "border"}, {"thickness", std::get<BorderShape>(s).thickness}};
}

std::vector<double> degrees_of(const std::vector<double>& rads) {
  std::vector<double> out;
  for (double r : rads) out.push_back(to_degrees(r));
  return out;
}

}  // namespace

bool operator==(const Scenario& a, const Scenario& b) {
  return a.name == b.name && a.map == b.map && a.start == b.start && a.goal == b.goal &&
         same(a.vehicle, b.vehicle) && same(a.config, b.config);
}

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario: invalid JSON: ") + e.what());
  }

  Fields root(doc, "$");
  Scenario s;
  if (root.has("name")) s.name = root.string("name");
  s.map = read_map(root.object("map"));
  s.start = read_pose(root.object("start"));
  s.goal = read_pose(root.object("goal"));
  if (root.has("vehicle")) s.vehicle = read_vehicle(root.object("vehicle"));

  MotionModel model = MotionModel::Kinematic;
  if (root.has("model")) model = motion_model_from_string(root.string("model"));
  s.config = PlannerConfig::defaults(s.vehicle, model, s.cell_size());
  PlannerConfig& cfg = s.config;

  if (root.has("costs")) {
    Fields c = root.object("costs");
    cfg.costs.steer_weight = c.number("steer_weight", cfg.costs.steer_weight);
    cfg.costs.reverse_penalty = c.number("reverse_penalty", cfg.costs.reverse_penalty);
    cfg.costs.heading_weight = c.number("heading_weight", cfg.costs.heading_weight);
    cfg.costs.heuristic_weight = c.number("heuristic_weight", cfg.costs.heuristic_weight);
    c.finish();
  }
  if (root.has("discretization")) {
    Fields d = root.object("discretization");
    if (d.has("v_samples")) cfg.controls.v_samples = d.numbers("v_samples");
    if (d.has("delta_samples_deg")) {
      cfg.controls.delta_samples.clear();
      for (double deg : d.numbers("delta_samples_deg")) {
        cfg.controls.delta_samples.push_back(to_radians(deg));
      }
    }
    cfg.controls.dt = d.number("dt", cfg.controls.dt);
    cfg.controls.arc_len = d.number("arc_len", cfg.controls.arc_len);
    if (d.has("extra_radii")) cfg.controls.extra_radii = d.numbers("extra_radii");
    if (d.has("theta_bins")) cfg.theta_bins = static_cast<int>(d.integer("theta_bins"));
    if (d.has("node_state")) cfg.node_state = node_state_from_string(d.string("node_state"));
    d.finish();
  }
  if (root.has("limits")) {
    Fields l = root.object("limits");
    if (l.has("max_expansions")) {
      const auto n = l.integer("max_expansions");
      if (n <= 0) l.fail("max_expansions must be positive");
      cfg.max_expansions = static_cast<std::size_t>(n);
    }
    l.finish();
  }
  if (root.has("collision")) cfg.collision = collision_mode_from_string(root.string("collision"));
  if (root.has("goal_tolerance")) {
    Fields t = root.object("goal_tolerance");
    cfg.goal_tolerance.position = t.number("position", cfg.goal_tolerance.position);
    if (t.has("heading_deg")) cfg.goal_tolerance.heading = to_radians(t.number("heading_deg"));
    t.finish();
  }
  root.finish();

  // Same validation plan() performs, surfaced at load time.
  cfg.costs.validate();
  cfg.controls.validate(s.vehicle, cfg.model);
  if (cfg.theta_bins < 1) throw ScenarioError("scenario: theta_bins must be at least 1");
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open scenario file '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  Scenario s = parse_scenario(text);
  if (auto* pgm = std::get_if<PgmMap>(&s.map)) {
    const std::filesystem::path p(pgm->path);
    if (p.is_relative()) {
      pgm->path = (std::filesystem::path(path).parent_path() / p).lexically_normal().string();
    }
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  json doc = json::object();
  doc["name"] = s.name;

  if (const auto* b = std::get_if<GridBuilder>(&s.map)) {
    json shapes = json::array();
    for (const auto& shape : b->shapes()) shapes.push_back(shape_json(shape));
    doc["map"] = {{"width", b->width()},
                  {"height", b->height()},
                  {"cell_size", b->cell_size()},
                  {"shapes", shapes}};
  } else {
    const auto& m = std::get<PgmMap>(s.map);
    doc["map"] = {{"pgm", m.path},
                  {"threshold", m.import.threshold},
                  {"invert", m.import.invert},
                  {"cell_size", m.import.cell_size}};
  }
  doc["start"] = pose_json(s.start);
  doc["goal"] = pose_json(s.goal);

  const auto& v = s.vehicle;
  doc["vehicle"] = {{"wheelbase", v.wheelbase},
                    {"length", v.footprint.length},
                    {"width", v.footprint.width},
                    {"ref_offset", v.footprint.ref_offset},
                    {"v_max", v.v_max},
                    {"delta_max_deg", to_degrees(v.delta_max)}};

  const auto& cfg = s.config;
  doc["model"] = to_string(cfg.model);
  doc["costs"] = {{"steer_weight", cfg.costs.steer_weight},
                  {"reverse_penalty", cfg.costs.reverse_penalty},
                  {"heading_weight", cfg.costs.heading_weight},
                  {"heuristic_weight", cfg.costs.heuristic_weight}};
  doc["discretization"] = {{"v_samples", cfg.controls.v_samples},
                           {"delta_samples_deg", degrees_of(cfg.controls.delta_samples)},
                           {"dt", cfg.controls.dt},
                           {"arc_len", cfg.controls.arc_len},
                           {"extra_radii", cfg.controls.extra_radii},
                           {"theta_bins", cfg.theta_bins},
                           {"node_state", to_string(cfg.node_state)}};
  doc["limits"] = {{"max_expansions", cfg.max_expansions}};
  doc["collision"] = to_string(cfg.collision);
  doc["goal_tolerance"] = {{"position", cfg.goal_tolerance.position},
                           {"heading_deg", to_degrees(cfg.goal_tolerance.heading)}};
  return doc.dump(2) + "\n";
}

Scenario scenario_from_fixture(const Fixture& f) {
  Scenario s;
  s.name = f.name;
  s.map = f.map;
  s.start = f.start;
  s.goal = f.goal;
  s.vehicle = f.vehicle;
  s.config = f.config;
  return s;
}

}  // namespace nhplan::cli
