#pragma once

// Validation effort accounting. The effort of checking one part of an edge is
// the number of interpolated states a dense pass would visit; cached-valid
// parts cost nothing and invalid parts make an edge unusable. A session-wide
// ledger tracks how much validated rs effort exists for reuse and how much of
// it the current search has already claimed, which discounts the a-priori
// effort-to-go heuristic.

#include <optional>
#include <span>
#include <vector>

#include "mqplan/config_space.hpp"
#include "mqplan/validity_cache.hpp"

namespace mqplan {

enum class InterpolationOrder { kBisection, kSequential };

struct EffortModel {
  double resolution{1e-3};
  InterpolationOrder order{InterpolationOrder::kBisection};
  /// Multiplies every effort value; orderings are invariant to it.
  double unit_scale{1.0};
  /// When set, clean os validation also accrues reusable effort. Off by
  /// default: os knowledge is only reusable when the same moved-object poses
  /// recur, unlike rs knowledge which transfers to every query.
  bool reusable_includes_os{false};

  /// ceil(dist / resolution) with a guard against floating-point ratios that
  /// land a hair above an integer.
  [[nodiscard]] std::int64_t check_count(double dist) const;
  /// Effort units for one unknown part of an edge of the given length.
  [[nodiscard]] double part_units(double dist) const {
    return unit_scale * static_cast<double>(check_count(dist));
  }
};

struct ReuseLedger {
  double e_reusable{0.0};  ///< accrued over the session
  double e_claimed{0.0};   ///< reset at the start of every query

  [[nodiscard]] double available() const noexcept {
    const double d = e_reusable - e_claimed;
    return d > 0.0 ? d : 0.0;
  }
};

/// Interior states of the segment a -> b, endpoints excluded, spaced so that
/// consecutive states (including the endpoints) are at most resolution apart.
/// Bisection order visits midpoints breadth-first, which tends to find
/// collisions with fewer checks; sequential order walks a -> b.
[[nodiscard]] std::vector<Config> interpolation_sequence(std::span<const double> a,
                                                         std::span<const double> b,
                                                         const EffortModel& model);

/// Effort to check one part; empty when the part is known invalid.
[[nodiscard]] std::optional<double> part_effort(PartValidity state, double dist,
                                                const EffortModel& model);

/// Total remaining validation effort of an edge under the active keys; empty
/// when any part is known invalid.
[[nodiscard]] std::optional<double> edge_effort(const ValidityCache& cache, int a, int b,
                                                double dist, const std::string& key_full,
                                                const std::string& key_moved,
                                                const EffortModel& model);

/// A-priori effort-to-go from q to the goal: the remaining effort of the
/// direct edge, discounted by the reusable effort the current search has not
/// yet claimed, clamped at zero. Parts known invalid are treated as unknown
/// since the heuristic must stay finite.
[[nodiscard]] double effort_to_go(const ValidityCache& cache, int q_id, int goal_id, double dist,
                                  const std::string& key_full, const std::string& key_moved,
                                  const ReuseLedger& ledger, const EffortModel& model);

}  // namespace mqplan
