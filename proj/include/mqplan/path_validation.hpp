#pragma once

// Dense edge and path validation against the validity cache. Each edge
// computes its check flags once from the cached tri-states, interpolates the
// interior states and checks only the unknown parts. A collision marks
// exactly the colliding parts invalid under their active keys and aborts; a
// clean pass marks all checked parts valid and accrues reusable effort for
// newly validated rs parts.

#include <span>
#include <vector>

#include "mqplan/config_space.hpp"
#include "mqplan/effort.hpp"
#include "mqplan/scene.hpp"
#include "mqplan/validity_cache.hpp"

namespace mqplan {

struct PathCandidate {
  std::vector<int> ids;         ///< sample ids, start to goal
  std::vector<Config> configs;  ///< one configuration per id

  [[nodiscard]] double cost() const;
  [[nodiscard]] std::size_t edge_count() const noexcept {
    return ids.empty() ? 0 : ids.size() - 1;
  }
};

/// Validates one edge. Returns false if any part is already known invalid or
/// a collision is found; partial progress on a failed edge is discarded.
bool validate_edge(Scene& scene, ValidityCache& cache, const EffortModel& model,
                   ReuseLedger& ledger, int a, int b, std::span<const double> qa,
                   std::span<const double> qb);

/// Validates one vertex state through its (id, id) cache record, spending
/// checks only on parts the active parametrization has not settled.
bool validate_vertex(Scene& scene, ValidityCache& cache, int id, std::span<const double> q);

/// Validates every vertex state and every edge of the path in order; true
/// only if all pass. Parts settled before a failure keep their marks.
bool validate_path(Scene& scene, ValidityCache& cache, const EffortModel& model,
                   ReuseLedger& ledger, const PathCandidate& path);

/// Ground-truth validation: monolithic all-pairs checks at the same
/// resolution, no caching. Optionally also checks the path vertices.
bool monolithic_path_valid(Scene& scene, const EffortModel& model, const PathCandidate& path,
                           bool include_vertices);

}  // namespace mqplan
