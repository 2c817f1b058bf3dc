#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "nhplan/geometry.hpp"

namespace nhplan {

struct VehicleSpec {
  double wheelbase = 1.0;  // distance between axles
  double v_max = 1.0;
  double delta_max = kPi / 4.0;  // radians, in (0, pi/2)
  Footprint footprint{};

  void validate() const;
  double min_turn_radius() const;
};

/// Signed speed (negative = reverse) and steering angle.
struct Control {
  double v = 0.0;
  double delta = 0.0;

  bool reverse() const { return v < 0.0; }
  friend bool operator==(const Control&, const Control&) = default;
};

enum class MotionModel { Kinematic, Geometric };

std::string to_string(MotionModel model);
MotionModel motion_model_from_string(const std::string& name);

/// Discretized control set shared by both expansion models. The kinematic
/// model uses `v_samples` x `delta_samples` integrated over `dt`; the
/// geometric model uses `arc_len` primitives at the minimum turn radius plus
/// any `extra_radii`.
struct ControlGrid {
  std::vector<double> v_samples;
  std::vector<double> delta_samples;
  double dt = 1.0;
  double arc_len = 1.41421356237309505;
  std::vector<double> extra_radii;

  /// v = {-v_max, v_max}, delta = {-d, -d/2, 0, d/2, d}, dt = cell / v_max,
  /// arc_len = cell * sqrt(2).
  static ControlGrid defaults(const VehicleSpec& spec, double cell_size = 1.0);

  void validate(const VehicleSpec& spec, MotionModel model) const;
};

enum class Direction { Forward, Reverse };

/// Constant-curvature motion primitive. `arc_angle` is the signed angle swept
/// around the turn center (positive = center on the left). A zero arc angle
/// is a straight segment of `length`.
struct ArcPrimitive {
  Direction direction = Direction::Forward;
  double radius = 0.0;
  double arc_angle = 0.0;
  double length = 0.0;

  double signed_length() const {
    return direction == Direction::Forward ? length : -length;
  }
};

/// One forward-Euler step of the bicycle model. Uses the pre-step heading in
/// all three state updates.
Pose kinematic_step(const Pose& pose, const Control& ctrl, double dt,
                    double wheelbase);

/// Rotates the pose about the turn center `radius` to the side given by the
/// sign of `arc_angle`. Reverse negates the rotation. The heading change equals
/// the rotation applied to the position.
Pose geometric_step(const Pose& pose, double radius, double arc_angle,
                    Direction direction);

/// Straight primitive (the infinite-radius limit of geometric_step).
Pose straight_step(const Pose& pose, double length, Direction direction);

Pose apply_primitive(const Pose& pose, const ArcPrimitive& prim);

/// One edge of the search graph, replayable at any fraction in [0, 1] for
/// swept collision checks.
struct EulerMotion {
  Control control;
  double dt = 0.0;
  double wheelbase = 1.0;
};

class Motion {
 public:
  Motion() = default;
  explicit Motion(EulerMotion m) : m_(m) {}
  explicit Motion(ArcPrimitive p) : m_(p) {}

  Pose at(const Pose& from, double fraction) const;
  /// Distance travelled by the reference point.
  double travel_length() const;
  /// Absolute heading change over the whole motion.
  double heading_sweep() const;

  bool is_kinematic() const { return std::holds_alternative<EulerMotion>(m_); }
  const EulerMotion* euler() const { return std::get_if<EulerMotion>(&m_); }
  const ArcPrimitive* primitive() const { return std::get_if<ArcPrimitive>(&m_); }

 private:
  std::variant<EulerMotion, ArcPrimitive> m_;
};

struct Neighbor {
  Pose pose;
  Control control;  // commanded, or the steering equivalent for primitives
  Motion motion;
};

/// |v_samples| x |delta_samples| raw successors, v outer and delta inner,
/// both ascending.
std::vector<Neighbor> neighbors_kinematic(const Pose& pose, const VehicleSpec& spec,
                                          const ControlGrid& cg);

/// {right arc(s), straight, left arc(s)} x {reverse, forward}. Each carries
/// the equivalent steering angle atan(l / r) for cost accounting and a
/// speed of +-v_max.
std::vector<Neighbor> neighbors_geometric(const Pose& pose, const VehicleSpec& spec,
                                          const ControlGrid& cg);

std::vector<Neighbor> neighbors(MotionModel model, const Pose& pose,
                                const VehicleSpec& spec, const ControlGrid& cg);

}  // namespace nhplan
