#pragma once

// Batched random geometric graph over the configuration space. Samples live
// in a registry keyed by their exact bits, so a configuration seen twice gets
// the same id and every edge fact cached against that id stays usable. Drawn
// samples that pass the parametrization-independent rs gate are kept in a
// persistent buffer; each query replays the buffer through its own activation
// gate before drawing anything new, which is what makes the roadmap reusable
// across queries and parametrizations.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mqplan/config_space.hpp"
#include "mqplan/random.hpp"
#include "mqplan/scene.hpp"

namespace mqplan {

class ValidityCache;

class SampleRegistry {
 public:
  /// Returns the id of a bit-identical existing sample or assigns a new one.
  int intern(const Config& q);
  [[nodiscard]] std::optional<int> find(const Config& q) const;
  [[nodiscard]] const Config& config(int id) const { return configs_.at(static_cast<std::size_t>(id)); }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(configs_.size()); }

 private:
  std::vector<Config> configs_;
  std::unordered_map<std::string, int> ids_;
};

struct RefineResult {
  int activated{0};  ///< samples added to the active approximation
  int examined{0};   ///< buffered candidates consumed plus fresh draws
  int drawn{0};      ///< fresh uniform draws, accepted or not
  bool truncated{false};  ///< examination cap reached before activating m
};

class Roadmap {
 public:
  explicit Roadmap(ConfigBounds bounds);

  /// Interns the endpoints and starts a query. Rewinding shrinks the active
  /// set back to the endpoints and replays the buffer from the front; without
  /// it the previous query's approximation is kept (ablation mode).
  std::pair<int, int> begin_query(const Config& start, const Config& goal, bool rewind = true);

  /// Grows the active approximation by up to m samples. Buffered samples are
  /// consumed first; past the end of the buffer, fresh uniform draws are
  /// admitted to the buffer when their rs part is collision-free. A candidate
  /// activates only if it can improve the incumbent (f(q) < c_best) and its
  /// ro and os parts are valid under the active parametrization. When a cache
  /// is given, those per-sample verdicts are stored as (id, id) records, so
  /// replaying the buffer under an already-seen parametrization costs no new
  /// checks. Gives up after examining 100 * m candidates.
  RefineResult refine_approximation(Scene& scene, Rng& rng, int m, double c_best,
                                    ValidityCache* cache = nullptr);

  [[nodiscard]] const std::vector<int>& active_ids() const noexcept { return active_; }
  [[nodiscard]] bool is_active(int id) const noexcept;
  /// Symmetric k-nearest adjacency over the active set, plus the direct
  /// start-goal edge, rebuilt after every begin_query and refine call.
  [[nodiscard]] const std::vector<int>& neighbors(int id) const;
  [[nodiscard]] const Config& config(int id) const { return registry_.config(id); }
  [[nodiscard]] int start_id() const noexcept { return start_id_; }
  [[nodiscard]] int goal_id() const noexcept { return goal_id_; }
  [[nodiscard]] const SampleRegistry& registry() const noexcept { return registry_; }
  [[nodiscard]] std::size_t buffer_size() const noexcept { return buffer_.size(); }
  [[nodiscard]] std::size_t cursor() const noexcept { return cursor_; }
  [[nodiscard]] const ConfigBounds& bounds() const noexcept { return bounds_; }

  /// Connection degree for an n-sample graph in the given dimension.
  [[nodiscard]] static int knn_k(std::size_t n, int dim);

 private:
  void activate(int id);
  void rebuild_adjacency();

  ConfigBounds bounds_;
  SampleRegistry registry_;
  std::vector<int> buffer_;  ///< rs-clean samples in draw order, persists across queries
  std::size_t cursor_{0};    ///< next buffer entry the current query will examine
  std::vector<int> active_;
  std::vector<char> active_flag_;           // indexed by sample id
  std::vector<std::vector<int>> adjacency_;  // indexed by sample id
  int start_id_{-1};
  int goal_id_{-1};
};

}  // namespace mqplan
