#include "mqplan/rgg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mqplan/path_validation.hpp"
#include "mqplan/validity_cache.hpp"

namespace mqplan {

int SampleRegistry::intern(const Config& q) {
  const auto [it, inserted] = ids_.try_emplace(config_bits(q), static_cast<int>(configs_.size()));
  if (inserted) configs_.push_back(q);
  return it->second;
}

std::optional<int> SampleRegistry::find(const Config& q) const {
  const auto it = ids_.find(config_bits(q));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Roadmap::Roadmap(ConfigBounds bounds) : bounds_(std::move(bounds)) {
  if (bounds_.dim() == 0 || bounds_.lower.size() != bounds_.upper.size())
    throw std::invalid_argument("roadmap bounds are empty or mismatched");
  for (std::size_t d = 0; d < bounds_.lower.size(); ++d)
    if (!(bounds_.lower[d] < bounds_.upper[d]))
      throw std::invalid_argument("roadmap bounds must have positive extent");
}

int Roadmap::knn_k(std::size_t n, int dim) {
  if (n < 2) return 0;
  const double k = 1.001 * std::exp(1.0) * (1.0 + 1.0 / dim) * std::log(static_cast<double>(n));
  return static_cast<int>(std::ceil(k - 1e-9));
}

bool Roadmap::is_active(int id) const noexcept {
  return id >= 0 && static_cast<std::size_t>(id) < active_flag_.size() &&
         active_flag_[static_cast<std::size_t>(id)] != 0;
}

void Roadmap::activate(int id) {
  if (static_cast<std::size_t>(id) >= active_flag_.size())
    active_flag_.resize(static_cast<std::size_t>(id) + 1, 0);
  if (active_flag_[static_cast<std::size_t>(id)]) return;
  active_flag_[static_cast<std::size_t>(id)] = 1;
  active_.push_back(id);
}

std::pair<int, int> Roadmap::begin_query(const Config& start, const Config& goal, bool rewind) {
  if (start.size() != bounds_.lower.size() || goal.size() != bounds_.lower.size())
    throw std::invalid_argument("query endpoints do not match the space dimension");
  start_id_ = registry_.intern(start);
  goal_id_ = registry_.intern(goal);
  if (rewind) {
    active_.clear();
    std::fill(active_flag_.begin(), active_flag_.end(), 0);
    cursor_ = 0;
  }
  activate(start_id_);
  activate(goal_id_);
  rebuild_adjacency();
  return {start_id_, goal_id_};
}

RefineResult Roadmap::refine_approximation(Scene& scene, Rng& rng, int m, double c_best,
                                           ValidityCache* cache) {
  RefineResult res;
  if (start_id_ < 0 || goal_id_ < 0) throw std::logic_error("refine before begin_query");
  if (m <= 0) return res;
  const long cap = 100L * m;
  // copies: interning fresh draws may reallocate the registry storage
  const Config s = registry_.config(start_id_);
  const Config g = registry_.config(goal_id_);
  Config q(bounds_.lower.size());

  while (res.activated < m && res.examined < cap) {
    int candidate;
    if (cursor_ < buffer_.size()) {
      candidate = buffer_[cursor_++];
      ++res.examined;
    } else {
      for (std::size_t d = 0; d < q.size(); ++d) q[d] = rng.uniform(bounds_.lower[d], bounds_.upper[d]);
      ++res.examined;
      ++res.drawn;
      if (scene.is_valid(q, true, false, false).coll_rs) continue;  // never usable, not buffered
      candidate = registry_.intern(q);
      // the draw gate settles the sample's rs part for good
      if (cache) cache->set_rs(candidate, candidate, PartValidity::kValid);
      buffer_.push_back(candidate);
      cursor_ = buffer_.size();
    }
    if (is_active(candidate)) continue;
    const Config& qc = registry_.config(candidate);
    if (!(config_distance(s, qc) + config_distance(qc, g) < c_best)) continue;

    // per-sample gate, remembered as an (id, id) record so buffer replays
    // under an already-seen parametrization cost nothing
    if (cache) {
      if (!validate_vertex(scene, *cache, candidate, qc)) continue;
    } else {
      const ValidityFlags flags = scene.is_valid(qc, false, true, true);
      if (flags.coll_ro || flags.coll_os) continue;
    }
    activate(candidate);
    ++res.activated;
  }
  res.truncated = res.activated < m;
  rebuild_adjacency();
  return res;
}

void Roadmap::rebuild_adjacency() {
  adjacency_.assign(static_cast<std::size_t>(registry_.size()), {});
  const std::size_t n = active_.size();
  if (n < 2) return;
  const int k = std::min(knn_k(n, static_cast<int>(bounds_.dim())), static_cast<int>(n) - 1);

  std::vector<std::pair<int, int>> directed;
  std::vector<std::pair<double, int>> cand;
  cand.reserve(n);
  for (const int u : active_) {
    cand.clear();
    const Config& qu = registry_.config(u);
    for (const int v : active_)
      if (v != u) cand.emplace_back(config_distance(qu, registry_.config(v)), v);
    // pair ordering breaks distance ties by id, keeping the graph deterministic
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    for (int i = 0; i < k; ++i) directed.emplace_back(u, cand[static_cast<std::size_t>(i)].second);
  }
  directed.emplace_back(start_id_, goal_id_);

  for (const auto& [u, v] : directed) {
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (const int u : active_) {
    auto& list = adjacency_[static_cast<std::size_t>(u)];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

const std::vector<int>& Roadmap::neighbors(int id) const {
  return adjacency_.at(static_cast<std::size_t>(id));
}

}  // namespace mqplan
