#include "mqplan/scene.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <stdexcept>

namespace mqplan {
namespace {

void append_bits(std::string& out, double v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(v)));
  out += buf;
}

void append_state(std::string& out, int id, const ObjectState& st) {
  char head[32];
  std::snprintf(head, sizeof head, "%d:%d:", id, st.parent_gripper);
  out += head;
  append_bits(out, st.rel.angle);
  out += ',';
  append_bits(out, st.rel.t.x);
  out += ',';
  append_bits(out, st.rel.t.y);
  out += ';';
}

}  // namespace

std::string Parametrization::key_full() const {
  std::string out;
  out.reserve(states.size() * 64);
  for (const auto& [id, st] : states) append_state(out, id, st);
  return out;
}

std::string Parametrization::key_moved() const {
  std::string out = "M";
  for (int id : moved) {
    out += std::to_string(id);
    out += ',';
  }
  out += '|';
  for (int id : moved) {
    const auto it = states.find(id);
    if (it != states.end()) append_state(out, id, it->second);
  }
  return out;
}

Scene::Scene(RobotModel robot, std::vector<StaticBody> statics, std::vector<MovableObject> movables)
    : robot_(std::move(robot)), statics_(std::move(statics)), movables_(std::move(movables)) {
  for (const StaticBody& s : statics_) validate_shape(s.shape);
  for (std::size_t i = 0; i < movables_.size(); ++i) {
    validate_shape(movables_[i].shape);
    for (std::size_t j = i + 1; j < movables_.size(); ++j)
      if (movables_[i].id == movables_[j].id)
        throw std::invalid_argument("duplicate movable object id");
  }
  movable_parent_.assign(movables_.size(), -1);
  movable_poses_.assign(movables_.size(), Pose{});
  has_parametrization_ = movables_.empty();
}

void Scene::update_parametrization(const Parametrization& p) {
  if (p.states.size() != movables_.size())
    throw std::invalid_argument("parametrization must cover every movable object exactly once");
  if (!std::is_sorted(p.moved.begin(), p.moved.end()) ||
      std::adjacent_find(p.moved.begin(), p.moved.end()) != p.moved.end())
    throw std::invalid_argument("moved set must be sorted and unique");

  for (std::size_t i = 0; i < movables_.size(); ++i) {
    const int id = movables_[i].id;
    const auto it = p.states.find(id);
    if (it == p.states.end())
      throw std::invalid_argument("parametrization is missing object " + std::to_string(id));
    const int parent = it->second.parent_gripper;
    if (parent < -1 || parent >= robot_.gripper_count())
      throw std::invalid_argument("object " + std::to_string(id) +
                                  " references a gripper the robot does not expose");
    const bool in_moved = std::binary_search(p.moved.begin(), p.moved.end(), id);
    if (parent >= 0 && !in_moved)
      throw std::invalid_argument("object " + std::to_string(id) +
                                  " is attached to a gripper but not in the moved set");
  }
  for (int id : p.moved)
    if (!p.states.contains(id))
      throw std::invalid_argument("moved set references unknown object " + std::to_string(id));

  active_ = p;
  has_parametrization_ = true;
  for (std::size_t i = 0; i < movables_.size(); ++i) {
    const ObjectState& st = active_.states.at(movables_[i].id);
    movable_parent_[i] = st.parent_gripper;
    if (st.parent_gripper < 0) movable_poses_[i] = st.rel;
  }
  refresh_rest_memos();
}

void Scene::refresh_rest_memos() {
  rest_os_collides_ = false;
  rest_ro_collides_ = false;
  for (std::size_t i = 0; i < movables_.size(); ++i) {
    if (movable_parent_[i] >= 0) continue;
    for (const StaticBody& s : statics_)
      if (overlap(movables_[i].shape, movable_poses_[i], s.shape, s.pose)) {
        rest_os_collides_ = true;
        break;
      }
    for (std::size_t j = i + 1; j < movables_.size() && !rest_ro_collides_; ++j) {
      if (movable_parent_[j] >= 0) continue;
      if (overlap(movables_[i].shape, movable_poses_[i], movables_[j].shape, movable_poses_[j]))
        rest_ro_collides_ = true;
    }
  }
}

void Scene::set_configuration(std::span<const double> q) {
  if (!has_parametrization_)
    throw std::logic_error("scene has movable objects but no active parametrization");
  robot_.forward_kinematics(q, body_poses_, gripper_poses_);
  for (std::size_t i = 0; i < movables_.size(); ++i) {
    const int parent = movable_parent_[i];
    if (parent >= 0) {
      const ObjectState& st = active_.states.at(movables_[i].id);
      movable_poses_[i] = compose(gripper_poses_[static_cast<std::size_t>(parent)], st.rel);
    }
  }
}

Pose Scene::object_world_pose(int object_id) const {
  for (std::size_t i = 0; i < movables_.size(); ++i)
    if (movables_[i].id == object_id) return movable_poses_[i];
  throw std::invalid_argument("unknown object id " + std::to_string(object_id));
}

bool Scene::part_rs() const {
  const int nb = robot_.body_count();
  for (int i = 0; i < nb; ++i) {
    const auto bi = static_cast<std::size_t>(i);
    for (int j = i + 1; j < nb; ++j) {
      if (robot_.self_collision_exempt(i, j)) continue;
      if (overlap(robot_.body_shape(i), body_poses_[bi], robot_.body_shape(j),
                  body_poses_[static_cast<std::size_t>(j)]))
        return true;
    }
    for (const StaticBody& s : statics_)
      if (overlap(robot_.body_shape(i), body_poses_[bi], s.shape, s.pose)) return true;
  }
  return false;
}

bool Scene::part_os() const {
  if (rest_os_collides_) return true;
  for (std::size_t i = 0; i < movables_.size(); ++i) {
    if (movable_parent_[i] < 0) continue;
    for (const StaticBody& s : statics_)
      if (overlap(movables_[i].shape, movable_poses_[i], s.shape, s.pose)) return true;
  }
  return false;
}

bool Scene::part_ro() const {
  if (rest_ro_collides_) return true;
  const int nb = robot_.body_count();
  for (std::size_t i = 0; i < movables_.size(); ++i) {
    const int parent = movable_parent_[i];
    const int exempt_body = parent >= 0 ? robot_.gripper_attach_body(parent) : -1;
    for (int b = 0; b < nb; ++b) {
      if (b == exempt_body) continue;
      if (overlap(movables_[i].shape, movable_poses_[i], robot_.body_shape(b),
                  body_poses_[static_cast<std::size_t>(b)]))
        return true;
    }
    for (std::size_t j = i + 1; j < movables_.size(); ++j) {
      if (movable_parent_[i] < 0 && movable_parent_[j] < 0) continue;  // covered by the memo
      if (overlap(movables_[i].shape, movable_poses_[i], movables_[j].shape, movable_poses_[j]))
        return true;
    }
  }
  return false;
}

ValidityFlags Scene::is_valid(std::span<const double> q, bool check_rs, bool check_ro,
                              bool check_os) {
  set_configuration(q);
  ValidityFlags flags;
  if (check_rs) {
    ++counters_.rs;
    flags.coll_rs = part_rs();
  }
  if (check_ro) {
    ++counters_.ro;
    flags.coll_ro = part_ro();
  }
  if (check_os) {
    ++counters_.os;
    flags.coll_os = part_os();
  }
  return flags;
}

bool Scene::monolithic_collides(std::span<const double> q) {
  set_configuration(q);
  ++counters_.rs;
  ++counters_.ro;
  ++counters_.os;

  enum Kind { kRobot, kStatic, kMovable };
  struct Ent {
    Kind kind;
    int idx;
    const Shape* shape;
    const Pose* pose;
  };
  std::vector<Ent> ents;
  ents.reserve(static_cast<std::size_t>(robot_.body_count()) + statics_.size() + movables_.size());
  for (int b = 0; b < robot_.body_count(); ++b)
    ents.push_back({kRobot, b, &robot_.body_shape(b), &body_poses_[static_cast<std::size_t>(b)]});
  for (std::size_t s = 0; s < statics_.size(); ++s)
    ents.push_back({kStatic, static_cast<int>(s), &statics_[s].shape, &statics_[s].pose});
  for (std::size_t m = 0; m < movables_.size(); ++m)
    ents.push_back({kMovable, static_cast<int>(m), &movables_[m].shape, &movable_poses_[m]});

  for (std::size_t i = 0; i < ents.size(); ++i)
    for (std::size_t j = i + 1; j < ents.size(); ++j) {
      const Ent& a = ents[i];
      const Ent& b = ents[j];
      if (a.kind == kStatic && b.kind == kStatic) continue;
      if (a.kind == kRobot && b.kind == kRobot && robot_.self_collision_exempt(a.idx, b.idx))
        continue;
      const bool robot_movable = (a.kind == kRobot && b.kind == kMovable) ||
                                 (a.kind == kMovable && b.kind == kRobot);
      if (robot_movable) {
        const int body = a.kind == kRobot ? a.idx : b.idx;
        const auto mov = static_cast<std::size_t>(a.kind == kMovable ? a.idx : b.idx);
        const int parent = movable_parent_[mov];
        if (parent >= 0 && robot_.gripper_attach_body(parent) == body) continue;
      }
      if (overlap(*a.shape, *a.pose, *b.shape, *b.pose)) return true;
    }
  return false;
}

void Scene::replace_movables(std::vector<MovableObject> movables) {
  for (std::size_t i = 0; i < movables.size(); ++i) {
    validate_shape(movables[i].shape);
    for (std::size_t j = i + 1; j < movables.size(); ++j)
      if (movables[i].id == movables[j].id) throw std::invalid_argument("duplicate movable object id");
  }
  movables_ = std::move(movables);
  active_ = {};
  has_parametrization_ = movables_.empty();
  movable_parent_.assign(movables_.size(), -1);
  movable_poses_.assign(movables_.size(), Pose{});
  rest_os_collides_ = false;
  rest_ro_collides_ = false;
}

}  // namespace mqplan
