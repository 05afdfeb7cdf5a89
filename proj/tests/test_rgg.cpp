#include "mqplan/rgg.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "mqplan/random.hpp"
#include "worlds.hpp"

using namespace mqplan;
using namespace mqplan::testworlds;

namespace {

Scene empty_world() {
  return Scene{RobotModel::free_flyer(Disc{0.1}, false), {}, {}};
}

ConfigBounds unit2() { return {{0.0, 0.0}, {2.0, 2.0}}; }

// independent k-nearest recomputation with a full sort
std::set<std::pair<int, int>> knn_closure_oracle(const Roadmap& map) {
  std::set<std::pair<int, int>> edges;
  const auto& active = map.active_ids();
  if (active.size() < 2) return edges;
  const int k = std::min(Roadmap::knn_k(active.size(), static_cast<int>(map.bounds().dim())),
                         static_cast<int>(active.size()) - 1);
  for (const int u : active) {
    std::vector<std::pair<double, int>> by_dist;
    for (const int v : active)
      if (v != u) by_dist.emplace_back(config_distance(map.config(u), map.config(v)), v);
    std::sort(by_dist.begin(), by_dist.end());
    for (int i = 0; i < k; ++i) {
      const int v = by_dist[static_cast<std::size_t>(i)].second;
      edges.insert({std::min(u, v), std::max(u, v)});
    }
  }
  edges.insert({std::min(map.start_id(), map.goal_id()), std::max(map.start_id(), map.goal_id())});
  return edges;
}

std::set<std::pair<int, int>> adjacency_edges(const Roadmap& map) {
  std::set<std::pair<int, int>> edges;
  for (const int u : map.active_ids())
    for (const int v : map.neighbors(u)) edges.insert({std::min(u, v), std::max(u, v)});
  return edges;
}

}  // namespace

TEST_CASE("connection degree follows the dimension-scaled log rule") {
  // hand-derived: 1.001 * e * 1.5 * ln(500) = 25.37, rounded up
  CHECK(Roadmap::knn_k(500, 2) == 26);
  CHECK(Roadmap::knn_k(2, 2) == 3);
  CHECK(Roadmap::knn_k(1, 2) == 0);
  for (std::size_t n = 2; n < 400; ++n) CHECK(Roadmap::knn_k(n + 1, 2) >= Roadmap::knn_k(n, 2));
  // higher dimension needs relatively fewer neighbors
  CHECK(Roadmap::knn_k(500, 6) < Roadmap::knn_k(500, 2));
}

TEST_CASE("sample registry reuses ids only for bit-identical configurations") {
  SampleRegistry reg;
  const Config a{0.1 + 0.2, 1.0};
  const Config b{0.3, 1.0};
  const int ia = reg.intern(a);
  CHECK(reg.intern(Config{0.1 + 0.2, 1.0}) == ia);
  CHECK(reg.intern(b) != ia);  // 0.1 + 0.2 differs from 0.3 in the last bit
  CHECK(reg.find(a) == ia);
  CHECK_FALSE(reg.find(Config{0.5, 0.5}).has_value());
  CHECK(reg.size() == 2);
}

TEST_CASE("the direct start-goal edge is always part of the graph") {
  Scene scene = empty_world();
  Roadmap map(unit2());
  Rng rng(4401);
  const auto [s, g] = map.begin_query({0.2, 0.2}, {1.8, 1.8});
  auto has = [&](int u, int v) {
    const auto& nb = map.neighbors(u);
    return std::find(nb.begin(), nb.end(), v) != nb.end();
  };
  CHECK(has(s, g));
  CHECK(has(g, s));
  map.refine_approximation(scene, rng, 60, std::numeric_limits<double>::infinity());
  CHECK(has(s, g));
  CHECK(has(g, s));
}

TEST_CASE("adjacency equals the symmetric k-nearest closure") {
  Scene scene = empty_world();
  Roadmap map(unit2());
  Rng rng(4402);
  map.begin_query({0.2, 0.2}, {1.8, 1.8});
  map.refine_approximation(scene, rng, 80, std::numeric_limits<double>::infinity());
  REQUIRE(map.active_ids().size() == 82);
  CHECK(adjacency_edges(map) == knn_closure_oracle(map));

  // neighbor lists are symmetric, sorted, self-free
  for (const int u : map.active_ids()) {
    const auto& nb = map.neighbors(u);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
    for (const int v : nb) {
      CHECK(v != u);
      const auto& back = map.neighbors(v);
      CHECK(std::find(back.begin(), back.end(), u) != back.end());
    }
  }
}

TEST_CASE("rewinding replays the buffer without new rs checks") {
  Scene scene = wall_world();
  scene.update_parametrization(resting({2.4, 0.2}, {0.4, 0.2}));
  Roadmap map(ConfigBounds{{0.0, 0.0}, {3.0, 2.0}});
  Rng rng(4403);

  map.begin_query({0.3, 1.5}, {2.7, 1.5});
  const RefineResult first = map.refine_approximation(scene, rng, 50, 1e18);
  REQUIRE(first.activated == 50);
  CHECK(first.drawn >= 50);
  CHECK(map.buffer_size() <= static_cast<std::size_t>(first.drawn));
  std::vector<int> actives_a = map.active_ids();

  const CheckCounters before = scene.counters();
  map.begin_query({0.3, 1.5}, {2.7, 1.5});
  CHECK(map.active_ids().size() == 2);
  const RefineResult second = map.refine_approximation(scene, rng, 50, 1e18);
  const CheckCounters delta = scene.counters() - before;

  CHECK(second.activated == 50);
  CHECK(second.drawn == 0);  // the buffer already holds enough candidates
  CHECK(delta.rs == 0);      // buffered samples are never re-gated on rs
  CHECK(delta.ro > 0);
  CHECK(delta.os > 0);
  std::vector<int> actives_b = map.active_ids();
  CHECK(actives_a == actives_b);  // same parametrization, same replay
}

TEST_CASE("samples rejected by the activation gate stay buffered for later") {
  Scene scene = wall_world();
  // a carried object makes many placements ro/os-blocked for this query only
  Parametrization p;
  p.states[1] = {0, Pose{0.0, 0.0, 0.3}};
  p.states[2] = {-1, Pose{0.0, 1.0, 1.7}};
  p.moved = {1};
  scene.update_parametrization(p);
  Roadmap map(ConfigBounds{{0.0, 0.0}, {3.0, 2.0}});
  Rng rng(4404);

  map.begin_query({0.3, 0.45}, {2.7, 0.45});
  const RefineResult r = map.refine_approximation(scene, rng, 40, 1e18);
  REQUIRE(r.activated == 40);
  // buffer admission is rs-only, so it holds more than what activated
  REQUIRE(map.buffer_size() > 40);
  CHECK(map.cursor() == map.buffer_size());

  // with the objects parked outside the sampling box, every buffered sample
  // activates, including the ones the carried object blocked above
  scene.update_parametrization(resting({3.3, 2.5}, {3.8, 2.5}));
  map.begin_query({0.3, 1.5}, {2.7, 1.5});
  const int limit = static_cast<int>(map.buffer_size());
  const RefineResult replay = map.refine_approximation(scene, rng, limit, 1e18);
  CHECK(replay.activated == limit);
  CHECK(replay.drawn == 0);
}

TEST_CASE("activation requires the sample to be able to improve the incumbent") {
  Scene scene = empty_world();
  Roadmap map(unit2());
  Rng rng(4405);
  const Config s{0.2, 1.0};
  const Config g{1.8, 1.0};
  map.begin_query(s, g);
  const double direct = config_distance(s, g);
  const double c_best = direct * 1.05;
  map.refine_approximation(scene, rng, 40, c_best);
  for (const int id : map.active_ids()) {
    if (id == map.start_id() || id == map.goal_id()) continue;
    const double f = config_distance(s, map.config(id)) + config_distance(map.config(id), g);
    CHECK(f < c_best);
  }
  // everything that was drawn but could not improve the incumbent is buffered
  CHECK(map.buffer_size() >= map.active_ids().size() - 2);
}

TEST_CASE("refinement gives up after examining one hundred candidates per request") {
  // the whole domain is inside a static block, every draw fails the rs gate
  Scene scene{RobotModel::free_flyer(Disc{0.05}, false),
              {{AxisBox{{2.0, 2.0}}, Pose{0.0, 1.0, 1.0}}},
              {}};
  Roadmap map(unit2());
  Rng rng(4406);
  map.begin_query({0.2, 0.2}, {1.8, 1.8});
  const RefineResult r = map.refine_approximation(scene, rng, 5, 1e18);
  CHECK(r.truncated);
  CHECK(r.activated == 0);
  CHECK(r.examined == 500);
  CHECK(r.drawn == 500);
  CHECK(map.buffer_size() == 0);
}

TEST_CASE("skipping the rewind keeps the previous approximation") {
  Scene scene = empty_world();
  Roadmap map(unit2());
  Rng rng(4407);
  map.begin_query({0.2, 0.2}, {1.8, 1.8});
  map.refine_approximation(scene, rng, 30, 1e18);
  const std::vector<int> before = map.active_ids();
  const std::size_t cursor_before = map.cursor();

  const auto [s2, g2] = map.begin_query({0.2, 1.8}, {1.8, 0.2}, /*rewind=*/false);
  const auto& kept = map.active_ids();
  for (const int id : before) CHECK(std::find(kept.begin(), kept.end(), id) != kept.end());
  CHECK(map.is_active(s2));
  CHECK(map.is_active(g2));
  CHECK(map.cursor() == cursor_before);

  // with the cursor still at the end, growth comes from fresh draws
  const RefineResult r = map.refine_approximation(scene, rng, 10, 1e18);
  CHECK(r.drawn >= 10);
  CHECK(map.active_ids().size() >= before.size() + 10);
}
