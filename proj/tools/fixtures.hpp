#pragma once

// Bundled benchmark scenarios, constructed in code so the committed JSON
// files can be regenerated and checked against drift.

#include <vector>

#include "mqplan/bench.hpp"

namespace mqplan::fixtures {

/// Obstacle-free room, one straight-line query.
[[nodiscard]] Scenario empty_room();

/// Divided room with a window in the wall; reach a resting box, grasp it
/// from the side, and carry it back through the window. 2 actions, 1 movable.
[[nodiscard]] Scenario wall_gap();

/// Same room, a family of 10 single-action instances whose movable differs
/// in shape and rest pose; robot-vs-static knowledge transfers, keyed
/// knowledge does not.
[[nodiscard]] Scenario wall_gap_family();

/// Rotating free-flyer carrying a disc through a window: a family of 10
/// carry actions with varying grasp offsets and endpoints, identical object.
[[nodiscard]] Scenario handover();

[[nodiscard]] std::vector<Scenario> all();

}  // namespace mqplan::fixtures
