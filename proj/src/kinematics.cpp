#include "mqplan/kinematics.hpp"

#include <stdexcept>

namespace mqplan {

RobotModel::RobotModel(std::vector<RobotPart> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("robot model needs at least one part");
  for (std::size_t pi = 0; pi < parts_.size(); ++pi) {
    const int part = static_cast<int>(pi);
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FreeFlyer>) {
            validate_shape(p.shape);
            body_shapes_.push_back(p.shape);
            body_part_.push_back(part);
            body_link_.push_back(-1);
            if (p.has_gripper) gripper_attach_body_.push_back(body_count() - 1);
            dof_ += p.rotating ? 3 : 2;
          } else {
            if (p.links.empty()) throw std::invalid_argument("chain needs at least one link");
            for (std::size_t li = 0; li < p.links.size(); ++li) {
              const auto& link = p.links[li];
              if (!(link.length > 0.0)) throw std::invalid_argument("link length must be positive");
              validate_shape(link.shape);
              body_shapes_.push_back(link.shape);
              body_part_.push_back(part);
              body_link_.push_back(static_cast<int>(li));
            }
            if (p.has_gripper) gripper_attach_body_.push_back(body_count() - 1);
            dof_ += static_cast<int>(p.links.size());
          }
        },
        parts_[pi]);
  }
}

bool RobotModel::self_collision_exempt(int body_a, int body_b) const noexcept {
  const auto a = static_cast<std::size_t>(body_a), b = static_cast<std::size_t>(body_b);
  if (body_part_[a] != body_part_[b]) return false;
  const int la = body_link_[a], lb = body_link_[b];
  if (la < 0 || lb < 0) return false;
  return la == lb + 1 || lb == la + 1;
}

void RobotModel::forward_kinematics(std::span<const double> q, std::vector<Pose>& bodies,
                                    std::vector<Pose>& grippers) const {
  if (static_cast<int>(q.size()) != dof_)
    throw std::invalid_argument("configuration dimension mismatch");
  bodies.clear();
  grippers.clear();
  std::size_t qi = 0;
  for (const RobotPart& part : parts_) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FreeFlyer>) {
            const double angle = p.rotating ? q[qi + 2] : 0.0;
            const Pose body{angle, {q[qi], q[qi + 1]}};
            bodies.push_back(body);
            if (p.has_gripper) grippers.push_back(body);
            qi += p.rotating ? 3 : 2;
          } else {
            Pose frame = p.base;
            for (const LinkSpec& link : p.links) {
              frame = compose(frame, Pose{q[qi++], {0.0, 0.0}});
              bodies.push_back(compose(frame, Pose{0.0, {link.length * 0.5, 0.0}}));
              frame = compose(frame, Pose{0.0, {link.length, 0.0}});
            }
            if (p.has_gripper) grippers.push_back(frame);
          }
        },
        part);
  }
}

RobotModel RobotModel::free_flyer(Shape shape, bool rotating, bool has_gripper) {
  return RobotModel{{FreeFlyer{std::move(shape), rotating, has_gripper}}};
}

RobotModel RobotModel::chain(Pose base, std::vector<LinkSpec> links, bool has_gripper) {
  return RobotModel{{PlanarChain{base, std::move(links), has_gripper}}};
}

bool RobotModel::operator==(const RobotModel& other) const { return parts_ == other.parts_; }

}  // namespace mqplan
