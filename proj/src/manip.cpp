#include "mqplan/manip.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace mqplan {

namespace {

constexpr double kContinuityTol = 1e-9;

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool same_state_bits(const ObjectState& a, const ObjectState& b) {
  return a.parent_gripper == b.parent_gripper && same_bits(a.rel.angle, b.rel.angle) &&
         same_bits(a.rel.t.x, b.rel.t.x) && same_bits(a.rel.t.y, b.rel.t.y);
}

[[noreturn]] void fail(std::size_t index, const std::string& what) {
  throw std::invalid_argument("action " + std::to_string(index) + ": " + what);
}

Pose gripper_pose(const RobotModel& robot, std::span<const double> q, int gripper) {
  std::vector<Pose> bodies;
  std::vector<Pose> grippers;
  robot.forward_kinematics(q, bodies, grippers);
  if (gripper < 0 || static_cast<std::size_t>(gripper) >= grippers.size())
    throw std::invalid_argument("gripper index out of range");
  return grippers[static_cast<std::size_t>(gripper)];
}

}  // namespace

ObjectState grasp_state(const RobotModel& robot, std::span<const double> q, int gripper,
                        const Pose& world_pose) {
  return {gripper, compose(inverse(gripper_pose(robot, q, gripper)), world_pose)};
}

ObjectState release_state(const RobotModel& robot, std::span<const double> q, int gripper,
                          const ObjectState& held) {
  return {-1, compose(gripper_pose(robot, q, gripper), held.rel)};
}

void validate_sequence(Scene scene, const ActionSequence& seq) {
  if (seq.actions.empty()) throw std::invalid_argument("sequence has no actions");

  for (std::size_t i = 0; i < seq.actions.size(); ++i) {
    const Action& a = seq.actions[i];
    try {
      scene.update_parametrization(a.parametrization);
      scene.set_configuration(a.start);
      scene.set_configuration(a.goal);
    } catch (const std::exception& e) {
      fail(i, e.what());
    }
  }

  for (std::size_t i = 0; i + 1 < seq.actions.size(); ++i) {
    const Action& a = seq.actions[i];
    const Action& b = seq.actions[i + 1];
    if (config_bits(a.goal) != config_bits(b.start))
      fail(i + 1, "start differs from the previous goal");

    // object world poses may not jump across the parametrization switch
    scene.update_parametrization(a.parametrization);
    scene.set_configuration(a.goal);
    std::vector<std::pair<int, Pose>> before;
    for (const MovableObject& m : scene.movables())
      before.emplace_back(m.id, scene.object_world_pose(m.id));
    scene.update_parametrization(b.parametrization);
    scene.set_configuration(b.start);
    for (const auto& [id, pose_a] : before) {
      const Pose pose_b = scene.object_world_pose(id);
      if (std::abs(pose_b.t.x - pose_a.t.x) > kContinuityTol ||
          std::abs(pose_b.t.y - pose_a.t.y) > kContinuityTol ||
          std::abs(wrap_angle(pose_b.angle - pose_a.angle)) > kContinuityTol)
        fail(i + 1, "object " + std::to_string(id) + " teleports across the transition");
    }

    // objects neither action moves must keep the exact same state
    std::set<int> touched(a.parametrization.moved.begin(), a.parametrization.moved.end());
    touched.insert(b.parametrization.moved.begin(), b.parametrization.moved.end());
    for (const MovableObject& m : scene.movables()) {
      if (touched.count(m.id)) continue;
      if (!same_state_bits(a.parametrization.states.at(m.id), b.parametrization.states.at(m.id)))
        fail(i + 1, "object " + std::to_string(m.id) + " changed state without being moved");
    }
  }
}

PlanningSession::PlanningSession(Scene scene, ConfigBounds bounds, PlannerKind kind,
                                 PlannerConfig config, SessionPolicy policy, std::uint64_t seed)
    : scene_(std::move(scene)),
      roadmap_(std::move(bounds)),
      rng_(seed),
      kind_(kind),
      config_(config),
      policy_(policy) {}

QueryResult PlanningSession::solve_action(const Action& action, const StopCondition& stop) {
  scene_.update_parametrization(action.parametrization);
  PlannerContext ctx{scene_, roadmap_, cache_, ledger_, rng_, config_};
  return plan(kind_, ctx, {action.start, action.goal, stop});
}

SequenceResult PlanningSession::solve_sequence(const ActionSequence& seq,
                                               const StopCondition& stop) {
  validate_sequence(scene_, seq);
  SequenceResult out;
  for (const Action& action : seq.actions) {
    const auto t0 = std::chrono::steady_clock::now();
    QueryResult r = solve_action(action, stop);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool found = r.found;
    out.actions.push_back({std::move(r), wall});
    if (!found) return out;  // the chain is broken, later actions are moot
  }
  out.solved = true;
  return out;
}

std::vector<SequenceResult> PlanningSession::solve_family(
    const std::vector<FamilyInstance>& instances, const StopCondition& stop) {
  if (policy_ == SessionPolicy::kFullReuse) {
    for (const FamilyInstance& inst : instances)
      if (inst.movables != scene_.movables())
        throw std::invalid_argument(
            "full reuse requires every instance to carry the session's movable objects");
  }
  std::vector<SequenceResult> out;
  out.reserve(instances.size());
  for (const FamilyInstance& inst : instances) {
    if (policy_ == SessionPolicy::kStaticOnlyReuse) {
      scene_.replace_movables(inst.movables);
      cache_.static_only_reset();
    }
    out.push_back(solve_sequence(inst.sequence, stop));
  }
  return out;
}

}  // namespace mqplan
