#pragma once

// Sequential manipulation problems: an ordered list of point-to-point
// queries, each under its own object parametrization. Consecutive actions
// must chain exactly (the next start is the previous goal) and object poses
// must be continuous across the parametrization switch, so picks and places
// cannot teleport anything. A planning session owns the scene, roadmap,
// cache, and ledger, and reuses them across actions, sequences, and whole
// families of related problems.

#include <cstdint>
#include <vector>

#include "mqplan/planners.hpp"
#include "mqplan/scene.hpp"

namespace mqplan {

struct Action {
  Parametrization parametrization;
  Config start;
  Config goal;
};

struct ActionSequence {
  std::vector<Action> actions;
};

/// Object state attaching the object to a gripper such that its world pose at
/// configuration q is exactly world_pose.
[[nodiscard]] ObjectState grasp_state(const RobotModel& robot, std::span<const double> q,
                                      int gripper, const Pose& world_pose);

/// Object state releasing a held object to the world at configuration q.
[[nodiscard]] ObjectState release_state(const RobotModel& robot, std::span<const double> q,
                                        int gripper, const ObjectState& held);

/// Checks chaining, object-pose continuity (1e-9), and that objects moved by
/// neither of two consecutive actions keep bit-identical states. Throws
/// std::invalid_argument naming the offending action index. The scene is
/// taken by value and used as scratch.
void validate_sequence(Scene scene, const ActionSequence& seq);

struct ActionRecord {
  QueryResult result;
  double wall_s{0.0};
};

struct SequenceResult {
  std::vector<ActionRecord> actions;  ///< one per attempted action
  bool solved{false};                 ///< every action found a path
};

/// What may be carried over between instances of a problem family.
enum class SessionPolicy {
  kFullReuse,        ///< keep everything; requires identical movable objects
  kStaticOnlyReuse,  ///< keep rs knowledge, buffer, and ledger; drop os/ro
};

struct FamilyInstance {
  std::vector<MovableObject> movables;
  ActionSequence sequence;
};

class PlanningSession {
 public:
  PlanningSession(Scene scene, ConfigBounds bounds, PlannerKind kind, PlannerConfig config,
                  SessionPolicy policy, std::uint64_t seed);

  QueryResult solve_action(const Action& action, const StopCondition& stop = {});
  SequenceResult solve_sequence(const ActionSequence& seq, const StopCondition& stop = {});
  /// Solves each instance in order under the session policy. With full reuse
  /// every instance must carry the movables the scene already has; with
  /// static-only reuse the movables are replaced and the keyed caches reset
  /// between instances.
  std::vector<SequenceResult> solve_family(const std::vector<FamilyInstance>& instances,
                                           const StopCondition& stop = {});

  [[nodiscard]] Scene& scene() noexcept { return scene_; }
  [[nodiscard]] Roadmap& roadmap() noexcept { return roadmap_; }
  [[nodiscard]] ValidityCache& cache() noexcept { return cache_; }
  [[nodiscard]] ReuseLedger& ledger() noexcept { return ledger_; }
  [[nodiscard]] Rng& rng() noexcept { return rng_; }
  [[nodiscard]] PlannerKind kind() const noexcept { return kind_; }
  [[nodiscard]] const PlannerConfig& config() const noexcept { return config_; }
  [[nodiscard]] SessionPolicy policy() const noexcept { return policy_; }

 private:
  Scene scene_;
  Roadmap roadmap_;
  ValidityCache cache_;
  ReuseLedger ledger_;
  Rng rng_;
  PlannerKind kind_;
  PlannerConfig config_;
  SessionPolicy policy_;
};

}  // namespace mqplan
