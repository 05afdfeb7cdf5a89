#include "mqplan/effort.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace mqplan {

std::int64_t EffortModel::check_count(double dist) const {
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  if (dist <= 0.0) return 0;
  return static_cast<std::int64_t>(std::ceil(dist / resolution - 1e-9));
}

std::vector<Config> interpolation_sequence(std::span<const double> a, std::span<const double> b,
                                           const EffortModel& model) {
  const std::int64_t segments = std::max<std::int64_t>(1, model.check_count(config_distance(a, b)));
  const std::int64_t interior = segments - 1;
  std::vector<Config> out;
  out.reserve(static_cast<std::size_t>(interior));
  if (interior <= 0) return out;

  if (model.order == InterpolationOrder::kSequential) {
    for (std::int64_t j = 1; j <= interior; ++j)
      out.push_back(config_lerp(a, b, static_cast<double>(j) / static_cast<double>(segments)));
    return out;
  }

  // Breadth-first midpoint subdivision over the index range [0, segments].
  std::deque<std::pair<std::int64_t, std::int64_t>> intervals{{0, segments}};
  while (!intervals.empty()) {
    const auto [lo, hi] = intervals.front();
    intervals.pop_front();
    const std::int64_t mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) continue;
    out.push_back(config_lerp(a, b, static_cast<double>(mid) / static_cast<double>(segments)));
    intervals.emplace_back(lo, mid);
    intervals.emplace_back(mid, hi);
  }
  return out;
}

std::optional<double> part_effort(PartValidity state, double dist, const EffortModel& model) {
  switch (state) {
    case PartValidity::kValid: return 0.0;
    case PartValidity::kInvalid: return std::nullopt;
    case PartValidity::kUnknown: default: return model.part_units(dist);
  }
}

std::optional<double> edge_effort(const ValidityCache& cache, int a, int b, double dist,
                                  const std::string& key_full, const std::string& key_moved,
                                  const EffortModel& model) {
  const auto rs = part_effort(cache.rs_state(a, b), dist, model);
  const auto os = part_effort(cache.os_state(a, b, key_moved), dist, model);
  const auto ro = part_effort(cache.ro_state(a, b, key_full), dist, model);
  if (!rs || !os || !ro) return std::nullopt;
  return *rs + *os + *ro;
}

double effort_to_go(const ValidityCache& cache, int q_id, int goal_id, double dist,
                    const std::string& key_full, const std::string& key_moved,
                    const ReuseLedger& ledger, const EffortModel& model) {
  const auto optimistic = [&](PartValidity state) {
    return state == PartValidity::kValid ? 0.0 : model.part_units(dist);
  };
  const double e = optimistic(cache.rs_state(q_id, goal_id)) +
                   optimistic(cache.os_state(q_id, goal_id, key_moved)) +
                   optimistic(cache.ro_state(q_id, goal_id, key_full));
  const double d = e - ledger.available();
  return d > 0.0 ? d : 0.0;
}

}  // namespace mqplan
