#pragma once

// Multiquery planners over the shared roadmap, cache, and effort ledger.
//
// The three roadmap planners share one batch loop: refine the approximation,
// search it, densely validate what the search proposes, tighten the incumbent,
// repeat. They differ in how the search orders its work:
//   - lazyprmstar:   cost-ordered lazy A*, validation only at the end
//   - eolazyprmstar: effort-ordered search with sparse midpoint checks until
//                    the first solution, cost-ordered afterwards
//   - eirmstar:      reverse effort propagation from the goal plus a forward
//                    search that validates edges as it commits to them and
//                    claims cached-valid effort it relies on
// rrtconnect is the memoryless baseline: bidirectional trees, monolithic
// checks, nothing reused between queries.

#include <limits>
#include <string>
#include <vector>

#include "mqplan/effort.hpp"
#include "mqplan/path_validation.hpp"
#include "mqplan/rgg.hpp"
#include "mqplan/scene.hpp"

namespace mqplan {

enum class PlannerKind { kRrtConnect, kLazyPrmStar, kEoLazyPrmStar, kEirmStar };

[[nodiscard]] std::string planner_name(PlannerKind kind);
/// Throws std::invalid_argument for unknown names.
[[nodiscard]] PlannerKind planner_from_name(const std::string& name);

struct PlannerConfig {
  int batch_size{30};
  EffortModel effort;
  /// Rewind the active approximation at every batch and query start. Turning
  /// this off is the ablation that lets the graph grow monotonically.
  bool rewind{true};
  /// Let eirmstar claim cached-valid effort while searching.
  bool claim_reusable{true};
  /// Steering step of rrtconnect, in multiples of the validation resolution.
  double rrt_steer_resolutions{10.0};
};

struct StopCondition {
  double budget_seconds{std::numeric_limits<double>::infinity()};
  bool first_solution{true};
  int max_batches{1000};
  long max_iterations{std::numeric_limits<long>::max()};  ///< rrtconnect extensions
  double target_cost{0.0};  ///< when positive, stop once the incumbent reaches it
};

struct Query {
  Config start;
  Config goal;
  StopCondition stop;
};

struct PlannerContext {
  Scene& scene;
  Roadmap& roadmap;
  ValidityCache& cache;
  ReuseLedger& ledger;
  Rng& rng;
  PlannerConfig config;
};

struct CostSample {
  double t_s;
  double cost;
};

struct QueryResult {
  bool found{false};
  PathCandidate path;
  double cost{std::numeric_limits<double>::infinity()};
  double t_first_s{std::numeric_limits<double>::infinity()};
  double c_first{std::numeric_limits<double>::infinity()};
  int batches{0};
  CheckCounters checks;  ///< state checks spent by this call, per part
  std::vector<CostSample> history;  ///< every incumbent improvement
  bool endpoint_invalid{false};
};

QueryResult plan(PlannerKind kind, PlannerContext& ctx, const Query& query);

// Search cores, exposed for direct testing on frozen graphs.

struct SearchResult {
  bool found{false};
  std::vector<int> ids;
  double cost{std::numeric_limits<double>::infinity()};
  double effort{std::numeric_limits<double>::infinity()};  ///< remaining validation effort
};

/// Lazy A* over the active graph, ordered by path cost with a Euclidean
/// goal heuristic. Edges with a part known invalid under the scene's active
/// keys are skipped; nothing is collision checked. Paths that cannot beat
/// c_best are pruned.
[[nodiscard]] SearchResult search_cost_ordered(const Roadmap& map, const ValidityCache& cache,
                                               const Scene& scene, double c_best);

/// Uniform-order search on accumulated remaining validation effort; returns
/// the path that is cheapest to validate under the current cache. The first
/// time an edge with unknown parts is considered, its midpoint is checked for
/// exactly those parts; a failure marks the part invalid and drops the edge,
/// a pass certifies nothing.
[[nodiscard]] SearchResult search_effort_ordered(const Roadmap& map, ValidityCache& cache,
                                                 Scene& scene, const EffortModel& model);

}  // namespace mqplan
