#include "nhplan/vehicle.hpp"

#include <algorithm>
#include <cmath>

namespace nhplan {

void VehicleSpec::validate() const {
  footprint.validate();
  if (!(wheelbase > 0.0) || !std::isfinite(wheelbase)) {
    throw ConfigError("VehicleSpec: wheelbase must be positive");
  }
  if (!(v_max > 0.0) || !std::isfinite(v_max)) {
    throw ConfigError("VehicleSpec: v_max must be positive");
  }
  if (!(delta_max > 0.0 && delta_max < kPi / 2.0)) {
    throw ConfigError("VehicleSpec: delta_max must lie in (0, pi/2)");
  }
}

double VehicleSpec::min_turn_radius() const {
  return wheelbase / std::tan(delta_max);
}

std::string to_string(MotionModel model) {
  return model == MotionModel::Kinematic ? "kinematic" : "geometric";
}

MotionModel motion_model_from_string(const std::string& name) {
  if (name == "kinematic") return MotionModel::Kinematic;
  if (name == "geometric") return MotionModel::Geometric;
  throw ConfigError("unknown motion model '" + name + "'");
}

ControlGrid ControlGrid::defaults(const VehicleSpec& spec, double cell_size) {
  ControlGrid cg;
  cg.v_samples = {-spec.v_max, spec.v_max};
  const double d = spec.delta_max;
  cg.delta_samples = {-d, -d / 2.0, 0.0, d / 2.0, d};
  cg.dt = cell_size / spec.v_max;
  cg.arc_len = cell_size * std::sqrt(2.0);
  return cg;
}

void ControlGrid::validate(const VehicleSpec& spec, MotionModel model) const {
  // Small slack so that samples built as +-v_max survive unit conversions.
  constexpr double kSlack = 1e-12;
  if (model == MotionModel::Kinematic) {
    if (v_samples.empty() || delta_samples.empty()) {
      throw ConfigError("ControlGrid: v_samples and delta_samples must be non-empty");
    }
    for (double v : v_samples) {
      if (!std::isfinite(v) || std::abs(v) > spec.v_max + kSlack) {
        throw ConfigError("ControlGrid: velocity sample outside [-v_max, v_max]");
      }
    }
    for (double d : delta_samples) {
      if (!std::isfinite(d) || std::abs(d) > spec.delta_max + kSlack) {
        throw ConfigError("ControlGrid: steering sample outside [-delta_max, delta_max]");
      }
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw ConfigError("ControlGrid: dt must be positive");
    }
  } else {
    if (!(arc_len > 0.0) || !std::isfinite(arc_len)) {
      throw ConfigError("ControlGrid: arc_len must be positive");
    }
    const double r_min = spec.min_turn_radius();
    for (double r : extra_radii) {
      if (!std::isfinite(r) || r < r_min * (1.0 - kSlack)) {
        throw ConfigError("ControlGrid: extra radius below the minimum turn radius");
      }
    }
  }
}

Pose kinematic_step(const Pose& pose, const Control& ctrl, double dt,
                    double wheelbase) {
  if (!(wheelbase > 0.0)) throw ConfigError("kinematic_step: wheelbase must be positive");
  if (!(dt >= 0.0)) throw ConfigError("kinematic_step: dt must be non-negative");
  if (!(std::abs(ctrl.delta) < kPi / 2.0)) {
    throw ConfigError("kinematic_step: |delta| must be below pi/2");
  }
  const double th = pose.theta();
  return Pose(pose.x() + ctrl.v * std::cos(th) * dt,
              pose.y() + ctrl.v * std::sin(th) * dt,
              th + (ctrl.v / wheelbase) * std::tan(ctrl.delta) * dt);
}

Pose geometric_step(const Pose& pose, double radius, double arc_angle,
                    Direction direction) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("geometric_step: radius must be positive");
  }
  if (arc_angle == 0.0) return pose;
  const double th = pose.theta();
  const double side = arc_angle > 0.0 ? 1.0 : -1.0;
  // Turn center: `radius` along the left normal (-sin, cos), or the right one.
  const double cx = pose.x() - side * radius * std::sin(th);
  const double cy = pose.y() + side * radius * std::cos(th);
  const double rot = direction == Direction::Forward ? arc_angle : -arc_angle;
  const double c = std::cos(rot);
  const double s = std::sin(rot);
  const double ox = pose.x() - cx;
  const double oy = pose.y() - cy;
  return Pose(cx + c * ox - s * oy, cy + s * ox + c * oy, th + rot);
}

Pose straight_step(const Pose& pose, double length, Direction direction) {
  const double d = direction == Direction::Forward ? length : -length;
  return Pose(pose.x() + d * std::cos(pose.theta()),
              pose.y() + d * std::sin(pose.theta()), pose.theta());
}

Pose apply_primitive(const Pose& pose, const ArcPrimitive& prim) {
  if (prim.arc_angle == 0.0) return straight_step(pose, prim.length, prim.direction);
  return geometric_step(pose, prim.radius, prim.arc_angle, prim.direction);
}

Pose Motion::at(const Pose& from, double fraction) const {
  if (const auto* e = euler()) {
    return kinematic_step(from, e->control, e->dt * fraction, e->wheelbase);
  }
  ArcPrimitive p = *primitive();
  p.arc_angle *= fraction;
  p.length *= fraction;
  return apply_primitive(from, p);
}

double Motion::travel_length() const {
  if (const auto* e = euler()) return std::abs(e->control.v) * e->dt;
  return primitive()->length;
}

double Motion::heading_sweep() const {
  if (const auto* e = euler()) {
    return std::abs(e->control.v / e->wheelbase * std::tan(e->control.delta) * e->dt);
  }
  return std::abs(primitive()->arc_angle);
}

std::vector<Neighbor> neighbors_kinematic(const Pose& pose, const VehicleSpec& spec,
                                          const ControlGrid& cg) {
  std::vector<double> vs = cg.v_samples;
  std::vector<double> ds = cg.delta_samples;
  std::sort(vs.begin(), vs.end());
  std::sort(ds.begin(), ds.end());

  std::vector<Neighbor> out;
  out.reserve(vs.size() * ds.size());
  for (double v : vs) {
    for (double d : ds) {
      const Control ctrl{v, d};
      out.push_back({kinematic_step(pose, ctrl, cg.dt, spec.wheelbase), ctrl,
                     Motion(EulerMotion{ctrl, cg.dt, spec.wheelbase})});
    }
  }
  return out;
}

std::vector<Neighbor> neighbors_geometric(const Pose& pose, const VehicleSpec& spec,
                                          const ControlGrid& cg) {
  std::vector<double> radii = cg.extra_radii;
  radii.push_back(spec.min_turn_radius());
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  // Ascending equivalent steering: tight right ... straight ... tight left.
  std::vector<ArcPrimitive> shapes;
  for (double r : radii) shapes.push_back({Direction::Forward, r, -cg.arc_len / r, cg.arc_len});
  shapes.push_back({Direction::Forward, 0.0, 0.0, cg.arc_len});
  for (auto it = radii.rbegin(); it != radii.rend(); ++it) {
    shapes.push_back({Direction::Forward, *it, cg.arc_len / *it, cg.arc_len});
  }

  std::vector<Neighbor> out;
  out.reserve(2 * shapes.size());
  for (Direction dir : {Direction::Reverse, Direction::Forward}) {
    const double v = dir == Direction::Forward ? spec.v_max : -spec.v_max;
    for (ArcPrimitive prim : shapes) {
      prim.direction = dir;
      double delta = 0.0;
      if (prim.arc_angle != 0.0) {
        delta = std::copysign(std::atan(spec.wheelbase / prim.radius), prim.arc_angle);
      }
      out.push_back({apply_primitive(pose, prim), Control{v, delta}, Motion(prim)});
    }
  }
  return out;
}

std::vector<Neighbor> neighbors(MotionModel model, const Pose& pose,
                                const VehicleSpec& spec, const ControlGrid& cg) {
  return model == MotionModel::Kinematic ? neighbors_kinematic(pose, spec, cg)
                                         : neighbors_geometric(pose, spec, cg);
}

}  // namespace nhplan
