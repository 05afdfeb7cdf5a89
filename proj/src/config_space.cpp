#include "mqplan/config_space.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace mqplan {

double config_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("configuration dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

Config config_lerp(std::span<const double> a, std::span<const double> b, double t) {
  Config out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + (b[i] - a[i]) * t;
  return out;
}

std::string config_bits(std::span<const double> q) {
  std::string out;
  out.reserve(q.size() * 17);
  char buf[24];
  for (double v : q) {
    std::snprintf(buf, sizeof buf, "%016llx,",
                  static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(v)));
    out += buf;
  }
  return out;
}

bool ConfigBounds::contains(std::span<const double> q) const {
  if (q.size() != lower.size()) return false;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] < lower[i] || q[i] > upper[i]) return false;
  return true;
}

}  // namespace mqplan
