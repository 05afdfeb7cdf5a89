#pragma once

// Robot models for planar worlds: free-flying bodies, serial chains and
// composites of both. Forward kinematics produces world poses for every
// collision body plus the gripper frames objects can attach to.

#include <span>
#include <variant>
#include <vector>

#include "mqplan/geometry.hpp"

namespace mqplan {

/// One link of a serial chain. The shape lives in the link frame with its
/// center at (length/2, 0), so a Capsule{r, length/2} spans the whole link.
struct LinkSpec {
  double length{0.0};
  Shape shape;
  bool operator==(const LinkSpec&) const = default;
};

/// Single rigid body; configuration is (x, y) or (x, y, angle).
struct FreeFlyer {
  Shape shape;
  bool rotating{false};
  bool has_gripper{true};
  bool operator==(const FreeFlyer&) const = default;
};

/// Serial revolute chain anchored at a fixed base pose; configuration is one
/// angle per link. The gripper frame sits at the tip, aligned with the last
/// link.
struct PlanarChain {
  Pose base;
  std::vector<LinkSpec> links;
  bool has_gripper{true};
  bool operator==(const PlanarChain&) const = default;
};

using RobotPart = std::variant<FreeFlyer, PlanarChain>;

/// A robot is a list of parts with concatenated configurations. Body and
/// gripper indices are assigned in part order and stay stable.
class RobotModel {
 public:
  RobotModel() = default;
  explicit RobotModel(std::vector<RobotPart> parts);

  [[nodiscard]] int dof() const noexcept { return dof_; }
  [[nodiscard]] int body_count() const noexcept { return static_cast<int>(body_shapes_.size()); }
  [[nodiscard]] int gripper_count() const noexcept { return static_cast<int>(gripper_attach_body_.size()); }
  [[nodiscard]] const std::vector<RobotPart>& parts() const noexcept { return parts_; }

  [[nodiscard]] const Shape& body_shape(int body) const { return body_shapes_[static_cast<std::size_t>(body)]; }

  /// Body carrying the given gripper frame; collisions between it and an
  /// object attached to that gripper are exempt.
  [[nodiscard]] int gripper_attach_body(int gripper) const {
    return gripper_attach_body_[static_cast<std::size_t>(gripper)];
  }

  /// Consecutive links of the same chain touch by construction and are
  /// exempt from self-collision.
  [[nodiscard]] bool self_collision_exempt(int body_a, int body_b) const noexcept;

  /// World poses for all bodies and gripper frames at configuration q.
  void forward_kinematics(std::span<const double> q, std::vector<Pose>& bodies,
                          std::vector<Pose>& grippers) const;

  [[nodiscard]] static RobotModel free_flyer(Shape shape, bool rotating, bool has_gripper = true);
  [[nodiscard]] static RobotModel chain(Pose base, std::vector<LinkSpec> links, bool has_gripper = true);

  [[nodiscard]] bool operator==(const RobotModel& other) const;

 private:
  std::vector<RobotPart> parts_;
  std::vector<Shape> body_shapes_;
  std::vector<int> body_part_;       // part index per body
  std::vector<int> body_link_;       // link index within the chain, -1 for free flyers
  std::vector<int> gripper_attach_body_;
  int dof_{0};
};

}  // namespace mqplan
