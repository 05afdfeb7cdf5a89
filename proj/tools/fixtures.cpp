#include "fixtures.hpp"

#include <cmath>

namespace mqplan::fixtures {
namespace {

RobotSpec disc_robot(bool rotating) {
  RobotSpec r;
  r.type = "free_flyer";
  r.shape = Disc{0.1};
  r.rotating = rotating;
  return r;
}

/// Divided 3x2 room: a wall at x = 1.5 with a window between the segments.
std::vector<StaticBody> divided_room(double window_lo, double window_hi) {
  const double lower_h = window_lo / 2.0;
  const double upper_h = (2.0 - window_hi) / 2.0;
  return {{AxisBox{{0.05, lower_h}}, Pose{0.0, {1.5, lower_h}}},
          {AxisBox{{0.05, upper_h}}, Pose{0.0, {1.5, window_hi + upper_h}}}};
}

}  // namespace

Scenario empty_room() {
  Scenario s;
  s.name = "empty";
  s.bounds = {{0.0, 0.0}, {3.0, 2.0}};
  s.robot = disc_robot(false);
  s.planner.effort.resolution = 0.01;
  Action a;
  a.start = {0.25, 0.25};
  a.goal = {2.75, 1.75};
  s.sequence.actions.push_back(std::move(a));
  return s;
}

Scenario wall_gap() {
  Scenario s;
  s.name = "wall_gap";
  s.bounds = {{0.0, 0.0}, {3.0, 2.0}};
  s.robot = disc_robot(false);
  // the window leaves a 0.3 m corridor for the robot disc, wide enough that
  // short routes through it keep real clearance from the wall corners
  s.statics = divided_room(0.75, 1.25);
  // a disc payload keeps every contact circular, so near-tangent carry paths
  // degrade gracefully under interpolated validation instead of edge-on-corner
  s.movables = {{1, Disc{0.06}}};
  s.planner.effort.resolution = 0.005;

  const Pose rest{0.0, {2.4, 0.2}};
  const Config grasp_q{2.2, 0.2};

  Action reach;  // cross the window and sidle up to the box
  reach.start = {0.3, 1.5};
  reach.goal = grasp_q;
  reach.parametrization.states[1] = {-1, rest};

  Action carry;  // side grasp, so the pair fits through the window
  carry.start = grasp_q;
  carry.goal = {0.5, 1.5};
  carry.parametrization.states[1] = grasp_state(s.robot.build(), grasp_q, 0, rest);
  carry.parametrization.moved = {1};

  s.sequence.actions.push_back(std::move(reach));
  s.sequence.actions.push_back(std::move(carry));
  return s;
}

Scenario wall_gap_family() {
  Scenario base = wall_gap();
  Scenario s;
  s.name = "wall_gap_family";
  s.bounds = base.bounds;
  s.robot = base.robot;
  s.statics = base.statics;
  s.planner = base.planner;
  // millimetric stepping: the family is meant to measure amortized planning
  // cost in a regime where collision checking dominates the wall clock
  s.planner.effort.resolution = 0.001;

  for (int i = 0; i < 10; ++i) {
    FamilyInstance inst;
    const Shape shape = (i % 2 == 0)
                            ? Shape{Disc{0.04 + 0.004 * i}}
                            : Shape{OrientedBox{{0.05 + 0.003 * i, 0.04}}};
    inst.movables = {{1, shape}};
    Action travel;
    travel.start = {0.3, 1.5};
    travel.goal = {2.7, 0.6};
    travel.parametrization.states[1] = {-1, Pose{0.0, {1.9 + 0.08 * i, 0.5 + 0.1 * i}}};
    inst.sequence.actions.push_back(std::move(travel));
    s.family.push_back(std::move(inst));
  }
  s.movables = s.family.front().movables;
  s.sequence = s.family.front().sequence;
  return s;
}

Scenario handover() {
  Scenario s;
  s.name = "handover";
  s.bounds = {{0.0, 0.0, -kPi}, {3.0, 2.0, kPi}};
  s.robot = disc_robot(true);
  s.statics = divided_room(0.9, 1.3);
  s.movables = {{1, Disc{0.05}}};
  s.planner.effort.resolution = 0.01;

  for (int i = 0; i < 10; ++i) {
    FamilyInstance inst;
    inst.movables = s.movables;
    Action carry;  // held disc rides ahead of the gripper through the window
    carry.start = {0.5 + 0.05 * i, 0.4 + 0.12 * i, 0.0};
    carry.goal = {2.5 - 0.03 * i, 0.5 + 0.1 * i, 0.0};
    carry.parametrization.states[1] = {0, Pose{0.0, {0.15, 0.0}}};
    carry.parametrization.moved = {1};
    inst.sequence.actions.push_back(std::move(carry));
    s.family.push_back(std::move(inst));
  }
  s.sequence = s.family.front().sequence;
  return s;
}

std::vector<Scenario> all() {
  return {empty_room(), wall_gap(), wall_gap_family(), handover()};
}

}  // namespace mqplan::fixtures
