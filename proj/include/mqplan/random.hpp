#pragma once

// Seeded random source. Doubles are derived from raw engine output with a
// fixed 53-bit mapping so sample streams do not depend on the standard
// library's distribution implementations.

#include <cstdint>
#include <random>

namespace mqplan {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  [[nodiscard]] std::uint64_t raw() { return engine_(); }

  /// Uniform in [0, 1).
  [[nodiscard]] double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  [[nodiscard]] double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

  /// Uniform integer in [lo, hi].
  [[nodiscard]] int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mqplan
