#pragma once

// Scene model: robot, static environment and movable objects. Each movable is
// parented either to the world or to a robot gripper, with a relative pose.
// Collision checking is decomposed into three independently cacheable parts:
//   rs  robot-robot and robot-static   (independent of the parametrization)
//   os  movable-static                 (depends on the moved objects' poses)
//   ro  robot-movable, movable-movable (depends on the full parametrization)
// The union of the three parts equals a monolithic all-pairs check.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mqplan/geometry.hpp"
#include "mqplan/kinematics.hpp"

namespace mqplan {

struct StaticBody {
  Shape shape;
  Pose pose;
  bool operator==(const StaticBody&) const = default;
};

struct MovableObject {
  int id{0};
  Shape shape;
  bool operator==(const MovableObject&) const = default;
};

struct ObjectState {
  int parent_gripper{-1};  ///< -1 means the world frame
  Pose rel;                ///< pose in the parent frame
  bool operator==(const ObjectState&) const = default;
};

/// Assignment of every movable object to a parent frame plus the set of
/// objects the current action moves. Objects attached to a gripper must be
/// members of the moved set; that is what keeps os-cache keys sound.
struct Parametrization {
  std::map<int, ObjectState> states;
  std::vector<int> moved;  ///< sorted, unique object ids

  /// Canonical byte string over all (id, parent, pose) triples, bit-exact.
  [[nodiscard]] std::string key_full() const;
  /// Same, restricted to the moved set (plus the set itself).
  [[nodiscard]] std::string key_moved() const;

  bool operator==(const Parametrization&) const = default;
};

struct ValidityFlags {
  bool coll_rs{false};
  bool coll_ro{false};
  bool coll_os{false};
  [[nodiscard]] bool any() const noexcept { return coll_rs || coll_ro || coll_os; }
};

/// State-level check counts per part. A monolithic check counts once on every
/// part since it performs all group pairs.
struct CheckCounters {
  std::uint64_t rs{0};
  std::uint64_t ro{0};
  std::uint64_t os{0};

  CheckCounters operator-(const CheckCounters& o) const noexcept {
    return {rs - o.rs, ro - o.ro, os - o.os};
  }
  [[nodiscard]] std::uint64_t total() const noexcept { return rs + ro + os; }
  bool operator==(const CheckCounters&) const = default;
};

class Scene {
 public:
  Scene(RobotModel robot, std::vector<StaticBody> statics, std::vector<MovableObject> movables);

  [[nodiscard]] int dof() const noexcept { return robot_.dof(); }
  [[nodiscard]] const RobotModel& robot() const noexcept { return robot_; }
  [[nodiscard]] const std::vector<StaticBody>& statics() const noexcept { return statics_; }
  [[nodiscard]] const std::vector<MovableObject>& movables() const noexcept { return movables_; }

  /// Installs the active parametrization. Validates ids, parent frames and
  /// the moved set, recomputes the configuration-independent memos. Throws
  /// std::invalid_argument on violations.
  void update_parametrization(const Parametrization& p);
  [[nodiscard]] const Parametrization& active() const noexcept { return active_; }

  /// Poses the robot and carried objects at q. Throws on dimension mismatch.
  void set_configuration(std::span<const double> q);

  /// Decomposed state check; computes only the requested parts and counts one
  /// state check per requested part.
  [[nodiscard]] ValidityFlags is_valid(std::span<const double> q, bool check_rs, bool check_ro,
                                       bool check_os);

  /// All-pairs ground-truth check over every posed body; independent of the
  /// decomposition logic. Counts one state check on each of the three parts.
  [[nodiscard]] bool monolithic_collides(std::span<const double> q);

  /// Whether any world-parented object intersects the static environment
  /// under the active parametrization; independent of q, memoized.
  [[nodiscard]] bool rest_os_collides() const noexcept { return rest_os_collides_; }

  /// World pose of an object at the configuration installed by the last
  /// set_configuration call.
  [[nodiscard]] Pose object_world_pose(int object_id) const;

  [[nodiscard]] CheckCounters& counters() noexcept { return counters_; }
  [[nodiscard]] const CheckCounters& counters() const noexcept { return counters_; }

  /// Swaps the movable set (same robot and statics); used for problem
  /// families. Clears the active parametrization.
  void replace_movables(std::vector<MovableObject> movables);

 private:
  [[nodiscard]] bool part_rs() const;
  [[nodiscard]] bool part_ro() const;
  [[nodiscard]] bool part_os() const;
  void refresh_rest_memos();

  RobotModel robot_;
  std::vector<StaticBody> statics_;
  std::vector<MovableObject> movables_;
  Parametrization active_;
  bool has_parametrization_{false};

  // scratch poses for the current configuration
  std::vector<Pose> body_poses_;
  std::vector<Pose> gripper_poses_;
  std::vector<Pose> movable_poses_;   // world pose per movable
  std::vector<int> movable_parent_;   // -1 world, else gripper index
  bool rest_os_collides_{false};
  bool rest_ro_collides_{false};

  CheckCounters counters_;
};

}  // namespace mqplan
