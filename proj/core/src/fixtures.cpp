#include <cmath>

#include "nhplan/world.hpp"

namespace nhplan {

namespace {

constexpr double deg(double d) { return d * kPi / 180.0; }

// Vehicles are sized in whole grid units; wheelbase equals body length and
// width is half the length, which puts the minimum turn radius at the body
// length for the 45 degree steering limit.
VehicleSpec vehicle_of_length(double length) {
  VehicleSpec v;
  v.wheelbase = length;
  v.v_max = 1.0;
  v.delta_max = deg(45.0);
  v.footprint = Footprint{length, 0.5 * length, 0.0};
  return v;
}

Fixture make(std::string name, std::string description, GridBuilder map, Pose start,
             Pose goal, VehicleSpec vehicle, MotionModel model = MotionModel::Kinematic) {
  PlannerConfig cfg = PlannerConfig::defaults(vehicle, model, map.cell_size());
  return Fixture{std::move(name), std::move(description), std::move(map), start,
                 goal,           std::move(vehicle),      std::move(cfg)};
}

// 30x30 room with a central pillar; the start sits below the pillar.
GridBuilder headings_map() {
  GridBuilder b(30, 30);
  b.border(1).rect(10, 13, 20, 17).circle(6.0, 22.0, 2.0).circle(24.0, 8.0, 2.0);
  return b;
}

// Open 30x14 hall. The goal lies straight behind the start with the same
// heading, so backing up is the short way and driving forward needs two
// turn-arounds.
GridBuilder reverse_map() {
  GridBuilder b(30, 14);
  b.border(1);
  return b;
}

// Cul-de-sac: a corridor four cells wide (rows 1..4) that ends in a 9x12
// turning bulb at its east end.
GridBuilder uturn_map() {
  GridBuilder b(30, 14);
  b.border(1).rect(1, 5, 20, 13);
  return b;
}

// Dual-lane map. A six-row corridor (rows 1..6) runs east from the start.
// The narrow lane is a three-cell slot (columns 11..13) rising from the
// corridor to the upper hall, west of the start. The wide lane is a
// fifteen-cell shaft (columns 40..54) at the east end of the corridor.
GridBuilder dual_lane_map() {
  GridBuilder b(56, 40);
  b.border(1).rect(1, 7, 11, 21).rect(14, 7, 40, 21);
  return b;
}

// Road-network stand-in: the straight route north passes a one-cell gap
// between two blocks, the drivable route takes the six-cell avenue around.
GridBuilder bottleneck_map() {
  GridBuilder b(30, 30);
  b.border(1)
      .rect(1, 12, 14, 17)    // west block
      .rect(15, 12, 22, 17)   // east block; the gap is column 14
      .rect(8, 21, 29, 23)    // upper wall, opening at the west
      .rect(1, 5, 9, 7);      // kerb near the start
  return b;
}

}  // namespace

std::vector<Fixture> scenario_fixtures() {
  std::vector<Fixture> out;
  const VehicleSpec small = vehicle_of_length(1.0);
  const VehicleSpec big = vehicle_of_length(2.0);
  const VehicleSpec huge = vehicle_of_length(6.0);

  {
    GridBuilder b(20, 20);
    out.push_back(make("straight_line", "Free 20x20 grid, goal 15 cells straight ahead.", b,
                       Pose(2.0, 2.0, 0.0), Pose(17.0, 2.0, 0.0), small));
  }
  {
    GridBuilder b(20, 20);
    b.rect(11, 11, 18, 12).rect(11, 16, 18, 17).rect(11, 12, 12, 16).rect(17, 12, 18, 16);
    out.push_back(make("enclosed_goal", "Goal cell walled in by a ring of occupied cells.", b,
                       Pose(3.0, 3.0, 0.0), Pose(14.5, 14.5, 0.0), small));
  }

  for (auto model : {MotionModel::Kinematic, MotionModel::Geometric}) {
    const std::string suffix = model == MotionModel::Kinematic ? "_kinematic" : "_geometric";
    out.push_back(make("headings_up" + suffix,
                       "Start heading +90 deg below a pillar, goal beyond it.", headings_map(),
                       Pose(15.0, 6.0, deg(90.0)), Pose(15.0, 24.0, deg(90.0)), big, model));
    out.push_back(make("headings_down" + suffix,
                       "Start heading -90 deg below a pillar, goal beyond it.", headings_map(),
                       Pose(15.0, 6.0, deg(-90.0)), Pose(15.0, 24.0, deg(90.0)), big, model));
  }

  out.push_back(make("reverse_corridor",
                     "Hall where the goal is 12 cells directly behind the start.", reverse_map(),
                     Pose(20.0, 7.0, 0.0), Pose(8.0, 7.0, 0.0), small));

  out.push_back(make("uturn_small", "Four-cell cul-de-sac U-turn, length-1 vehicle.", uturn_map(),
                     Pose(4.0, 2.0, 0.0), Pose(4.0, 4.0, deg(180.0)), small));
  out.push_back(make("uturn_big", "Four-cell cul-de-sac U-turn, length-2 vehicle.", uturn_map(),
                     Pose(4.0, 2.5, 0.0), Pose(4.0, 3.5, deg(180.0)), big));

  out.push_back(make("dual_lane_len2",
                     "Three-cell narrow lane behind the start vs fifteen-cell wide lane "
                     "ahead; length-2 vehicle.",
                     dual_lane_map(), Pose(20.0, 2.5, 0.0), Pose(28.0, 27.0, deg(90.0)), big));
  {
    // A one-cell step turns a wheelbase-6 vehicle by less than half a heading
    // bin, so every turning successor would share the straight one's key.
    Fixture f = make("dual_lane_len6",
                     "Three-cell narrow lane behind the start vs fifteen-cell wide lane "
                     "ahead; length-6 vehicle.",
                     dual_lane_map(), Pose(20.0, 4.0, 0.0), Pose(28.0, 27.0, deg(90.0)), huge);
    f.config.controls.dt = 2.5;
    f.config.controls.arc_len = 2.5;
    out.push_back(std::move(f));
  }

  {
    VehicleSpec wide = big;
    wide.footprint.width = 1.2;
    out.push_back(make("bottleneck",
                       "Road map whose shortest open route squeezes through a one-cell gap.",
                       bottleneck_map(), Pose(4.0, 3.0, 0.0), Pose(24.0, 26.0, 0.0), wide));
  }
  return out;
}

Fixture fixture_by_name(const std::string& name) {
  for (auto& f : scenario_fixtures()) {
    if (f.name == name) return f;
  }
  throw ConfigError("unknown fixture '" + name + "'");
}

}  // namespace nhplan
