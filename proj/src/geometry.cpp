#include "mqplan/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

namespace mqplan {
namespace {

// World-frame canonical forms. Every posed shape reduces to one of these,
// which keeps the pair dispatch small.

struct Circle {
  Vec2 c;
  double r;
};

struct Obb {
  Vec2 c;
  Vec2 ux;  // unit axes
  Vec2 uy;
  Vec2 half;

  [[nodiscard]] std::array<Vec2, 4> corners() const noexcept {
    const Vec2 ex = ux * half.x, ey = uy * half.y;
    return {c + ex + ey, c - ex + ey, c - ex - ey, c + ex - ey};
  }
};

struct Stadium {  // capsule in the world frame
  Vec2 a;
  Vec2 b;
  double r;
};

struct Poly {
  std::vector<Vec2> v;  // CCW
};

Circle to_circle(const Disc& d, const Pose& p) { return {p.t, d.radius}; }

Obb to_obb(Vec2 half, const Pose& p) {
  const double c = std::cos(p.angle), s = std::sin(p.angle);
  return {p.t, {c, s}, {-s, c}, half};
}

Stadium to_stadium(const Capsule& cap, const Pose& p) {
  const Vec2 d = rotate(p.angle, {cap.half_length, 0.0});
  return {p.t - d, p.t + d, cap.radius};
}

Poly to_poly(const ConvexPolygon& cp, const Pose& p) {
  Poly out;
  out.v.reserve(cp.vertices.size());
  for (Vec2 v : cp.vertices) out.v.push_back(apply(p, v));
  return out;
}

double point_segment_dist_sq(Vec2 p, Vec2 a, Vec2 b) noexcept {
  const Vec2 ab = b - a;
  const double len_sq = norm_sq(ab);
  double t = len_sq > 0.0 ? dot(p - a, ab) / len_sq : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm_sq(p - (a + ab * t));
}

// Point inside the box, boundary inclusive.
bool point_in_obb(Vec2 p, const Obb& b) noexcept {
  const Vec2 d = p - b.c;
  return std::abs(dot(d, b.ux)) <= b.half.x && std::abs(dot(d, b.uy)) <= b.half.y;
}

double point_obb_dist_sq(Vec2 p, const Obb& b) noexcept {
  const Vec2 d = p - b.c;
  const double lx = std::clamp(dot(d, b.ux), -b.half.x, b.half.x);
  const double ly = std::clamp(dot(d, b.uy), -b.half.y, b.half.y);
  const Vec2 closest = b.c + b.ux * lx + b.uy * ly;
  return norm_sq(p - closest);
}

bool point_in_poly(Vec2 p, const Poly& poly) noexcept {
  const std::size_t n = poly.v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly.v[i], b = poly.v[(i + 1) % n];
    if (cross(b - a, p - a) < 0.0) return false;
  }
  return true;
}

double point_poly_dist_sq(Vec2 p, const Poly& poly) noexcept {
  if (point_in_poly(p, poly)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.v.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, point_segment_dist_sq(p, poly.v[i], poly.v[(i + 1) % n]));
  return best;
}

// Separating-axis test over explicit vertex sets. Touching is overlap, so a
// separating axis needs a strictly positive gap.
bool sat_separated(const std::vector<Vec2>& va, const std::vector<Vec2>& vb, Vec2 axis) noexcept {
  double min_a = std::numeric_limits<double>::infinity(), max_a = -min_a;
  for (Vec2 v : va) {
    const double d = dot(v, axis);
    min_a = std::min(min_a, d);
    max_a = std::max(max_a, d);
  }
  double min_b = std::numeric_limits<double>::infinity(), max_b = -min_b;
  for (Vec2 v : vb) {
    const double d = dot(v, axis);
    min_b = std::min(min_b, d);
    max_b = std::max(max_b, d);
  }
  return max_a < min_b || max_b < min_a;
}

std::vector<Vec2> edge_normals(const std::vector<Vec2>& v) {
  std::vector<Vec2> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(perp(v[(i + 1) % v.size()] - v[i]));
  return out;
}

bool convex_convex_overlap(const std::vector<Vec2>& va, const std::vector<Vec2>& vb) {
  for (Vec2 axis : edge_normals(va))
    if (sat_separated(va, vb, axis)) return false;
  for (Vec2 axis : edge_normals(vb))
    if (sat_separated(va, vb, axis)) return false;
  return true;
}

double segment_obb_dist_sq(Vec2 a, Vec2 b, const Obb& box) {
  if (point_in_obb(a, box) || point_in_obb(b, box)) return 0.0;
  const auto c = box.corners();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    best = std::min(best, segment_segment_dist_sq(a, b, c[i], c[(i + 1) % 4]));
  return best;
}

double segment_poly_dist_sq(Vec2 a, Vec2 b, const Poly& poly) {
  if (point_in_poly(a, poly) || point_in_poly(b, poly)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.v.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, segment_segment_dist_sq(a, b, poly.v[i], poly.v[(i + 1) % n]));
  return best;
}

double sq(double x) noexcept { return x * x; }

// ── canonical pair tests ────────────────────────────────────────────────────

bool hit(const Circle& a, const Circle& b) { return norm_sq(a.c - b.c) <= sq(a.r + b.r); }
bool hit(const Circle& a, const Obb& b) { return point_obb_dist_sq(a.c, b) <= sq(a.r); }
bool hit(const Circle& a, const Stadium& b) {
  return point_segment_dist_sq(a.c, b.a, b.b) <= sq(a.r + b.r);
}
bool hit(const Circle& a, const Poly& b) { return point_poly_dist_sq(a.c, b) <= sq(a.r); }

bool hit(const Obb& a, const Obb& b) {
  const auto ca = a.corners(), cb = b.corners();
  const std::vector<Vec2> va(ca.begin(), ca.end()), vb(cb.begin(), cb.end());
  for (Vec2 axis : {a.ux, a.uy, b.ux, b.uy})
    if (sat_separated(va, vb, axis)) return false;
  return true;
}
bool hit(const Obb& a, const Stadium& b) { return segment_obb_dist_sq(b.a, b.b, a) <= sq(b.r); }
bool hit(const Obb& a, const Poly& b) {
  const auto c = a.corners();
  return convex_convex_overlap({c.begin(), c.end()}, b.v);
}

bool hit(const Stadium& a, const Stadium& b) {
  return segment_segment_dist_sq(a.a, a.b, b.a, b.b) <= sq(a.r + b.r);
}
bool hit(const Stadium& a, const Poly& b) { return segment_poly_dist_sq(a.a, a.b, b) <= sq(a.r); }

bool hit(const Poly& a, const Poly& b) { return convex_convex_overlap(a.v, b.v); }

using Canonical = std::variant<Circle, Obb, Stadium, Poly>;

Canonical canonicalize(const Shape& s, const Pose& p) {
  return std::visit(
      [&](const auto& shape) -> Canonical {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Disc>) return to_circle(shape, p);
        else if constexpr (std::is_same_v<T, AxisBox>) return to_obb(shape.half, p);
        else if constexpr (std::is_same_v<T, OrientedBox>) return to_obb(shape.half, p);
        else if constexpr (std::is_same_v<T, Capsule>) return to_stadium(shape, p);
        else return to_poly(shape, p);
      },
      s);
}

template <class A, class B>
bool ordered_hit(const A& a, const B& b) {
  if constexpr (requires { hit(a, b); }) return hit(a, b);
  else return hit(b, a);
}

}  // namespace

bool overlap(const Shape& a, const Pose& pa, const Shape& b, const Pose& pb) {
  const Canonical ca = canonicalize(a, pa), cb = canonicalize(b, pb);
  return std::visit([](const auto& x, const auto& y) { return ordered_hit(x, y); }, ca, cb);
}

bool contains_point(const Shape& s, const Pose& p, Vec2 point) {
  const Canonical c = canonicalize(s, p);
  return std::visit(
      [&](const auto& shape) -> bool {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Circle>)
          return norm_sq(point - shape.c) <= sq(shape.r);
        else if constexpr (std::is_same_v<T, Obb>)
          return point_in_obb(point, shape);
        else if constexpr (std::is_same_v<T, Stadium>)
          return point_segment_dist_sq(point, shape.a, shape.b) <= sq(shape.r);
        else
          return point_in_poly(point, shape);
      },
      c);
}

Aabb shape_aabb(const Shape& s, const Pose& p) {
  const Canonical c = canonicalize(s, p);
  return std::visit(
      [](const auto& shape) -> Aabb {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Circle>) {
          const Vec2 r{shape.r, shape.r};
          return {shape.c - r, shape.c + r};
        } else if constexpr (std::is_same_v<T, Obb>) {
          const Vec2 ext{std::abs(shape.ux.x) * shape.half.x + std::abs(shape.uy.x) * shape.half.y,
                         std::abs(shape.ux.y) * shape.half.x + std::abs(shape.uy.y) * shape.half.y};
          return {shape.c - ext, shape.c + ext};
        } else if constexpr (std::is_same_v<T, Stadium>) {
          const Vec2 lo{std::min(shape.a.x, shape.b.x) - shape.r, std::min(shape.a.y, shape.b.y) - shape.r};
          const Vec2 hi{std::max(shape.a.x, shape.b.x) + shape.r, std::max(shape.a.y, shape.b.y) + shape.r};
          return {lo, hi};
        } else {
          Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
          Vec2 hi = -lo;
          for (Vec2 v : shape.v) {
            lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
            hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
          }
          return {lo, hi};
        }
      },
      c);
}

double segment_segment_dist_sq(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) noexcept {
  // Closest points via clamped quadratic minimization (Ericson, RTCD 5.1.9).
  const Vec2 d1 = a1 - a0, d2 = b1 - b0, r = a0 - b0;
  const double la = norm_sq(d1), lb = norm_sq(d2), f = dot(d2, r);
  double s = 0.0, t = 0.0;
  if (la <= 0.0 && lb <= 0.0) return norm_sq(r);
  if (la <= 0.0) {
    t = std::clamp(f / lb, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (lb <= 0.0) {
      s = std::clamp(-c / la, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = la * lb - b * b;
      if (denom > 0.0) s = std::clamp((b * f - c * lb) / denom, 0.0, 1.0);
      t = (b * s + f) / lb;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / la, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / la, 0.0, 1.0);
      }
    }
  }
  return norm_sq((a0 + d1 * s) - (b0 + d2 * t));
}

void validate_shape(const Shape& s) {
  std::visit(
      [](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Disc>) {
          if (!(shape.radius > 0.0)) throw std::invalid_argument("disc radius must be positive");
        } else if constexpr (std::is_same_v<T, AxisBox> || std::is_same_v<T, OrientedBox>) {
          if (!(shape.half.x > 0.0 && shape.half.y > 0.0))
            throw std::invalid_argument("box half extents must be positive");
        } else if constexpr (std::is_same_v<T, Capsule>) {
          if (!(shape.radius > 0.0 && shape.half_length > 0.0))
            throw std::invalid_argument("capsule radius and half length must be positive");
        } else {
          const auto& v = shape.vertices;
          if (v.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
          for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2 a = v[i], b = v[(i + 1) % v.size()], c = v[(i + 2) % v.size()];
            if (cross(b - a, c - b) <= 0.0)
              throw std::invalid_argument("polygon must be strictly convex and CCW");
          }
        }
      },
      s);
}

}  // namespace mqplan
