#pragma once

// Configurations are flat coordinate vectors in a bounded box; distances are
// Euclidean over the raw coordinates.

#include <span>
#include <string>
#include <vector>

namespace mqplan {

using Config = std::vector<double>;

[[nodiscard]] double config_distance(std::span<const double> a, std::span<const double> b);

/// Point at parameter t in [0,1] along the straight segment a -> b.
[[nodiscard]] Config config_lerp(std::span<const double> a, std::span<const double> b, double t);

/// Bit-exact serialization used to recognize identical configurations.
[[nodiscard]] std::string config_bits(std::span<const double> q);

struct ConfigBounds {
  Config lower;
  Config upper;

  [[nodiscard]] std::size_t dim() const noexcept { return lower.size(); }
  [[nodiscard]] bool contains(std::span<const double> q) const;
};

}  // namespace mqplan
