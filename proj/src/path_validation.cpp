#include "mqplan/path_validation.hpp"

namespace mqplan {

double PathCandidate::cost() const {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < configs.size(); ++i)
    acc += config_distance(configs[i], configs[i + 1]);
  return acc;
}

bool validate_edge(Scene& scene, ValidityCache& cache, const EffortModel& model,
                   ReuseLedger& ledger, int a, int b, std::span<const double> qa,
                   std::span<const double> qb) {
  // A parametrization whose resting objects already intersect the statics has
  // no valid states at all. Returning early keeps the os cache clean: the
  // conflict is not a property of the moved objects' key.
  if (scene.rest_os_collides()) return false;

  const std::string key_full = scene.active().key_full();
  const std::string key_moved = scene.active().key_moved();

  const PartValidity rs = cache.rs_state(a, b);
  const PartValidity os = cache.os_state(a, b, key_moved);
  const PartValidity ro = cache.ro_state(a, b, key_full);
  if (rs == PartValidity::kInvalid || os == PartValidity::kInvalid ||
      ro == PartValidity::kInvalid)
    return false;

  const bool check_rs = rs == PartValidity::kUnknown;
  const bool check_os = os == PartValidity::kUnknown;
  const bool check_ro = ro == PartValidity::kUnknown;
  if (!check_rs && !check_os && !check_ro) return true;

  for (const Config& q : interpolation_sequence(qa, qb, model)) {
    const ValidityFlags flags = scene.is_valid(q, check_rs, check_ro, check_os);
    if (flags.any()) {
      if (flags.coll_rs) cache.set_rs(a, b, PartValidity::kInvalid);
      if (flags.coll_ro) cache.set_ro(a, b, key_full, PartValidity::kInvalid);
      if (flags.coll_os) cache.set_os(a, b, key_moved, PartValidity::kInvalid);
      return false;
    }
  }

  const double units = model.part_units(config_distance(qa, qb));
  if (check_rs) {
    cache.set_rs(a, b, PartValidity::kValid);
    ledger.e_reusable += units;
  }
  if (check_os) {
    cache.set_os(a, b, key_moved, PartValidity::kValid);
    if (model.reusable_includes_os) ledger.e_reusable += units;
  }
  if (check_ro) cache.set_ro(a, b, key_full, PartValidity::kValid);
  return true;
}

bool validate_vertex(Scene& scene, ValidityCache& cache, int id, std::span<const double> q) {
  if (scene.rest_os_collides()) return false;

  const std::string key_full = scene.active().key_full();
  const std::string key_moved = scene.active().key_moved();

  const PartValidity rs = cache.rs_state(id, id);
  const PartValidity os = cache.os_state(id, id, key_moved);
  const PartValidity ro = cache.ro_state(id, id, key_full);
  if (rs == PartValidity::kInvalid || os == PartValidity::kInvalid ||
      ro == PartValidity::kInvalid)
    return false;

  const bool check_rs = rs == PartValidity::kUnknown;
  const bool check_os = os == PartValidity::kUnknown;
  const bool check_ro = ro == PartValidity::kUnknown;
  if (!check_rs && !check_os && !check_ro) return true;

  const ValidityFlags flags = scene.is_valid(q, check_rs, check_ro, check_os);
  if (check_rs)
    cache.set_rs(id, id, flags.coll_rs ? PartValidity::kInvalid : PartValidity::kValid);
  if (check_os)
    cache.set_os(id, id, key_moved, flags.coll_os ? PartValidity::kInvalid : PartValidity::kValid);
  if (check_ro)
    cache.set_ro(id, id, key_full, flags.coll_ro ? PartValidity::kInvalid : PartValidity::kValid);
  return !flags.any();
}

bool validate_path(Scene& scene, ValidityCache& cache, const EffortModel& model,
                   ReuseLedger& ledger, const PathCandidate& path) {
  for (std::size_t i = 0; i < path.ids.size(); ++i)
    if (!validate_vertex(scene, cache, path.ids[i], path.configs[i])) return false;
  for (std::size_t i = 0; i + 1 < path.ids.size(); ++i)
    if (!validate_edge(scene, cache, model, ledger, path.ids[i], path.ids[i + 1],
                       path.configs[i], path.configs[i + 1]))
      return false;
  return true;
}

bool monolithic_path_valid(Scene& scene, const EffortModel& model, const PathCandidate& path,
                           bool include_vertices) {
  if (include_vertices)
    for (const Config& q : path.configs)
      if (scene.monolithic_collides(q)) return false;
  for (std::size_t i = 0; i + 1 < path.configs.size(); ++i)
    for (const Config& q : interpolation_sequence(path.configs[i], path.configs[i + 1], model))
      if (scene.monolithic_collides(q)) return false;
  return true;
}

}  // namespace mqplan
