#pragma once

// Planar geometry kernel: rigid poses, convex shape primitives and
// closed-form overlap tests. Touching shapes count as colliding.

#include <cmath>
#include <variant>
#include <vector>

namespace mqplan {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ── vectors ─────────────────────────────────────────────────────────────────

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(Vec2 o) const noexcept { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const noexcept { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const noexcept { return {x * s, y * s}; }
  constexpr Vec2 operator-() const noexcept { return {-x, -y}; }
  constexpr bool operator==(const Vec2&) const noexcept = default;
};

[[nodiscard]] constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
[[nodiscard]] constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
[[nodiscard]] constexpr double norm_sq(Vec2 a) noexcept { return dot(a, a); }
[[nodiscard]] inline double norm(Vec2 a) noexcept { return std::sqrt(norm_sq(a)); }
[[nodiscard]] constexpr Vec2 perp(Vec2 a) noexcept { return {-a.y, a.x}; }

// ── rigid poses ─────────────────────────────────────────────────────────────

/// Folds an angle to (-pi, pi].
[[nodiscard]] inline double wrap_angle(double a) noexcept {
  double w = std::remainder(a, 2.0 * kPi);
  return (w <= -kPi) ? w + 2.0 * kPi : w;
}

/// Planar rigid transform. Angle is kept folded to (-pi, pi].
struct Pose {
  double angle{0.0};
  Vec2 t;

  Pose() = default;
  Pose(double a, Vec2 translation) noexcept : angle(wrap_angle(a)), t(translation) {}
  Pose(double a, double tx, double ty) noexcept : Pose(a, Vec2{tx, ty}) {}

  [[nodiscard]] static Pose identity() noexcept { return {}; }
  [[nodiscard]] bool operator==(const Pose&) const noexcept = default;
};

/// Applies the transform to a point.
[[nodiscard]] inline Vec2 apply(const Pose& p, Vec2 v) noexcept {
  const double c = std::cos(p.angle), s = std::sin(p.angle);
  return {p.t.x + c * v.x - s * v.y, p.t.y + s * v.x + c * v.y};
}

/// Rotates a direction without translating it.
[[nodiscard]] inline Vec2 rotate(double angle, Vec2 v) noexcept {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

[[nodiscard]] inline Pose compose(const Pose& a, const Pose& b) noexcept {
  return {a.angle + b.angle, a.t + rotate(a.angle, b.t)};
}

[[nodiscard]] inline Pose inverse(const Pose& p) noexcept {
  return {-p.angle, rotate(-p.angle, p.t) * -1.0};
}

// ── shapes ──────────────────────────────────────────────────────────────────

/// Ball around the local origin.
struct Disc {
  double radius{0.0};
  bool operator==(const Disc&) const = default;
};

/// Box authored without local rotation. Under a posed transform it behaves
/// exactly like OrientedBox; the distinction only documents intent.
struct AxisBox {
  Vec2 half;
  bool operator==(const AxisBox&) const = default;
};

struct OrientedBox {
  Vec2 half;
  bool operator==(const OrientedBox&) const = default;
};

/// Segment along the local x axis from (-half_length,0) to (half_length,0),
/// inflated by radius.
struct Capsule {
  double radius{0.0};
  double half_length{0.0};
  bool operator==(const Capsule&) const = default;
};

/// Convex, counter-clockwise vertex list in the local frame.
struct ConvexPolygon {
  std::vector<Vec2> vertices;
  bool operator==(const ConvexPolygon&) const = default;
};

using Shape = std::variant<Disc, AxisBox, OrientedBox, Capsule, ConvexPolygon>;

/// Throws std::invalid_argument when metric fields are not positive or a
/// polygon is not convex CCW.
void validate_shape(const Shape& s);

/// Overlap test between two posed shapes; touching counts as overlap.
/// Symmetric in its arguments.
[[nodiscard]] bool overlap(const Shape& a, const Pose& pa, const Shape& b, const Pose& pb);

/// Point membership; the boundary counts as inside.
[[nodiscard]] bool contains_point(const Shape& s, const Pose& p, Vec2 point);

struct Aabb {
  Vec2 lo;
  Vec2 hi;
};

/// Axis-aligned bounding box of a posed shape.
[[nodiscard]] Aabb shape_aabb(const Shape& s, const Pose& p);

/// Distance between two segments [a0,a1] and [b0,b1], squared.
[[nodiscard]] double segment_segment_dist_sq(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) noexcept;

}  // namespace mqplan
