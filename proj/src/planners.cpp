#include "mqplan/planners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace mqplan {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double id_dist(const Roadmap& map, int a, int b) {
  return config_distance(map.config(a), map.config(b));
}

std::vector<int> reconstruct(const std::unordered_map<int, int>& parent, int start, int goal) {
  std::vector<int> ids{goal};
  int cur = goal;
  while (cur != start) {
    cur = parent.at(cur);
    ids.push_back(cur);
  }
  std::reverse(ids.begin(), ids.end());
  return ids;
}

PathCandidate make_path(const Roadmap& map, const std::vector<int>& ids) {
  PathCandidate path;
  path.ids = ids;
  path.configs.reserve(ids.size());
  for (const int id : ids) path.configs.push_back(map.config(id));
  return path;
}

// (priority, tiebreak, vertex id, cost-to-come at push for staleness)
using QueueEntry = std::tuple<double, double, int, double>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImprovementEps = 1e-12;

}  // namespace

std::string planner_name(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kRrtConnect: return "rrtconnect";
    case PlannerKind::kLazyPrmStar: return "lazyprmstar";
    case PlannerKind::kEoLazyPrmStar: return "eolazyprmstar";
    case PlannerKind::kEirmStar: return "eirmstar";
  }
  throw std::logic_error("unreachable planner kind");
}

PlannerKind planner_from_name(const std::string& name) {
  if (name == "rrtconnect") return PlannerKind::kRrtConnect;
  if (name == "lazyprmstar") return PlannerKind::kLazyPrmStar;
  if (name == "eolazyprmstar") return PlannerKind::kEoLazyPrmStar;
  if (name == "eirmstar") return PlannerKind::kEirmStar;
  throw std::invalid_argument("unknown planner: " + name);
}

SearchResult search_cost_ordered(const Roadmap& map, const ValidityCache& cache,
                                 const Scene& scene, double c_best) {
  SearchResult res;
  const int s = map.start_id();
  const int g = map.goal_id();
  const std::string kf = scene.active().key_full();
  const std::string km = scene.active().key_moved();

  std::unordered_map<int, double> g_cost;
  std::unordered_map<int, int> parent;
  MinQueue open;
  g_cost[s] = 0.0;
  open.push({id_dist(map, s, g), 0.0, s, 0.0});

  while (!open.empty()) {
    const auto [f, tie, u, g_at_push] = open.top();
    open.pop();
    if (g_at_push > g_cost.at(u) + kImprovementEps) continue;  // stale entry
    if (f >= c_best) break;  // everything left is prunable
    if (u == g) {
      res.found = true;
      res.ids = reconstruct(parent, s, g);
      res.cost = g_cost.at(u);
      return res;
    }
    const double gu = g_cost.at(u);
    for (const int v : map.neighbors(u)) {
      if (!cache.usable(v, v, kf, km) || !cache.usable(u, v, kf, km)) continue;
      const double w = id_dist(map, u, v);
      const double cand = gu + w;
      const double fv = cand + id_dist(map, v, g);
      if (fv >= c_best) continue;
      const auto it = g_cost.find(v);
      if (it != g_cost.end() && cand >= it->second - kImprovementEps) continue;
      g_cost[v] = cand;
      parent[v] = u;
      open.push({fv, cand, v, cand});
    }
  }
  return res;
}

SearchResult search_effort_ordered(const Roadmap& map, ValidityCache& cache, Scene& scene,
                                   const EffortModel& model) {
  SearchResult res;
  const int s = map.start_id();
  const int g = map.goal_id();
  const std::string kf = scene.active().key_full();
  const std::string km = scene.active().key_moved();

  std::unordered_map<int, double> g_eff;
  std::unordered_map<int, double> g_cost;
  std::unordered_map<int, int> parent;
  MinQueue open;

  g_eff[s] = 0.0;
  g_cost[s] = 0.0;
  open.push({0.0, 0.0, s, 0.0});

  while (!open.empty()) {
    const auto [f, tie, u, e_at_push] = open.top();
    open.pop();
    if (e_at_push > g_eff.at(u) + kImprovementEps) continue;
    if (u == g) {
      res.found = true;
      res.ids = reconstruct(parent, s, g);
      res.cost = g_cost.at(u);
      res.effort = g_eff.at(u);
      return res;
    }
    const double eu = g_eff.at(u);
    const double cu = g_cost.at(u);
    for (const int v : map.neighbors(u)) {
      if (!cache.usable(v, v, kf, km)) continue;
      const double w = id_dist(map, u, v);
      const auto eff = edge_effort(cache, u, v, w, kf, km, model);
      if (!eff) continue;
      if (*eff > 0.0 && model.check_count(w) >= 2) {
        // probe the midpoint for parts neither settled nor probed before; a
        // hit proves the part invalid, a miss is memoized and proves nothing
        const bool crs = cache.rs_state(u, v) == PartValidity::kUnknown && !cache.rs_probed(u, v);
        const bool cro =
            cache.ro_state(u, v, kf) == PartValidity::kUnknown && !cache.ro_probed(u, v, kf);
        const bool cos =
            cache.os_state(u, v, km) == PartValidity::kUnknown && !cache.os_probed(u, v, km);
        if (crs || cro || cos) {
          const Config mid = config_lerp(map.config(u), map.config(v), 0.5);
          const ValidityFlags hit = scene.is_valid(mid, crs, cro, cos);
          bool blocked = false;
          if (hit.coll_rs) { cache.set_rs(u, v, PartValidity::kInvalid); blocked = true; }
          else if (crs) cache.set_rs_probed(u, v);
          if (hit.coll_ro) { cache.set_ro(u, v, kf, PartValidity::kInvalid); blocked = true; }
          else if (cro) cache.set_ro_probed(u, v, kf);
          if (hit.coll_os) { cache.set_os(u, v, km, PartValidity::kInvalid); blocked = true; }
          else if (cos) cache.set_os_probed(u, v, km);
          if (blocked) continue;
        }
      }
      const double cand = eu + *eff;
      const auto it = g_eff.find(v);
      if (it != g_eff.end() && cand >= it->second - kImprovementEps) continue;
      g_eff[v] = cand;
      g_cost[v] = cu + w;
      parent[v] = u;
      open.push({cand, cu + w, v, cand});
    }
  }
  return res;
}

namespace {

// Effort-to-come from the goal over the active graph, cache reads only.
std::unordered_map<int, double> reverse_effort(const Roadmap& map, const ValidityCache& cache,
                                               const std::string& kf, const std::string& km,
                                               const EffortModel& model) {
  std::unordered_map<int, double> dist;
  MinQueue open;
  dist[map.goal_id()] = 0.0;
  open.push({0.0, 0.0, map.goal_id(), 0.0});
  while (!open.empty()) {
    const auto [d, tie, u, d_at_push] = open.top();
    open.pop();
    if (d_at_push > dist.at(u) + kImprovementEps) continue;
    for (const int v : map.neighbors(u)) {
      if (!cache.usable(v, v, kf, km)) continue;
      const double w = id_dist(map, u, v);
      const auto eff = edge_effort(cache, u, v, w, kf, km, model);
      if (!eff) continue;
      const double cand = d + *eff;
      const auto it = dist.find(v);
      if (it != dist.end() && cand >= it->second - kImprovementEps) continue;
      dist[v] = cand;
      open.push({cand, 0.0, v, cand});
    }
  }
  return dist;
}

enum class ForwardOutcome { kFound, kInvalidated, kExhausted };

// Forward search that validates each edge as it commits to it. Before the
// first solution it is ordered by remaining effort and guided by the reverse
// pass; afterwards it is ordered by cost and pruned against the incumbent.
ForwardOutcome eirm_forward(const Roadmap& map, Scene& scene, ValidityCache& cache,
                            ReuseLedger& ledger, const EffortModel& model,
                            const std::unordered_map<int, double>& e_hat, bool effort_phase,
                            double c_best, bool claim, std::vector<int>& out_ids,
                            double& out_cost) {
  const int s = map.start_id();
  const int g = map.goal_id();
  const std::string kf = scene.active().key_full();
  const std::string km = scene.active().key_moved();

  ledger.e_claimed = 0.0;  // claims describe the current search only
  std::set<std::pair<int, int>> claimed;

  auto apriori = [&](int v) {
    return effort_to_go(cache, v, g, id_dist(map, v, g), kf, km, ledger, model);
  };
  auto h = [&](int v) -> double {
    if (!effort_phase) return id_dist(map, v, g);
    const auto it = e_hat.find(v);
    return it != e_hat.end() ? it->second : apriori(v);
  };

  std::unordered_map<int, double> g_val;   // effort or cost, by phase
  std::unordered_map<int, double> g_cost;  // always the path cost
  std::unordered_map<int, int> parent;
  std::set<std::pair<int, int>> validated;  // edges settled by this search
  MinQueue open;
  g_val[s] = 0.0;
  g_cost[s] = 0.0;
  open.push({h(s), 0.0, s, 0.0});

  while (!open.empty()) {
    const auto [f, tie, u, v_at_push] = open.top();
    open.pop();
    if (v_at_push > g_val.at(u) + kImprovementEps) continue;
    if (!effort_phase && f >= c_best) break;

    if (u != s) {
      // pay for the committed edge and its far vertex now; on failure the
      // cache already holds the invalid mark and the search restarts
      const int p = parent.at(u);
      const auto key = std::pair{std::min(p, u), std::max(p, u)};
      if (validated.insert(key).second &&
          (!validate_vertex(scene, cache, u, map.config(u)) ||
           !validate_edge(scene, cache, model, ledger, p, u, map.config(p), map.config(u))))
        return ForwardOutcome::kInvalidated;
    }
    if (u == g) {
      out_ids = reconstruct(parent, s, g);
      out_cost = g_cost.at(u);
      return ForwardOutcome::kFound;
    }

    const double vu = g_val.at(u);
    const double cu = g_cost.at(u);
    for (const int v : map.neighbors(u)) {
      if (!cache.usable(v, v, kf, km)) continue;
      const double w = id_dist(map, u, v);
      double weight;
      if (effort_phase) {
        const auto eff = edge_effort(cache, u, v, w, kf, km, model);
        if (!eff) continue;
        weight = *eff;
      } else {
        if (!cache.usable(u, v, kf, km)) continue;
        weight = w;
      }
      const double cand = vu + weight;
      if (!effort_phase && cand + id_dist(map, v, g) >= c_best) continue;
      const auto it = g_val.find(v);
      if (it != g_val.end() && cand >= it->second - kImprovementEps) continue;
      if (claim && effort_phase && cache.rs_state(u, v) == PartValidity::kValid &&
          claimed.insert({std::min(u, v), std::max(u, v)}).second)
        ledger.e_claimed = std::min(ledger.e_reusable, ledger.e_claimed + model.part_units(w));
      g_val[v] = cand;
      g_cost[v] = cu + w;
      parent[v] = u;
      open.push({cand + h(v), cu + w, v, cand});
    }
  }
  return ForwardOutcome::kExhausted;
}

struct Incumbent {
  double c_best{kInf};

  void offer(QueryResult& out, PathCandidate&& path, double cost, double t_s) {
    if (cost >= c_best - kImprovementEps) return;
    c_best = cost;
    out.found = true;
    out.path = std::move(path);
    out.cost = cost;
    if (!std::isfinite(out.c_first)) {
      out.c_first = cost;
      out.t_first_s = t_s;
    }
    out.history.push_back({t_s, cost});
  }
};

void prm_plan(PlannerKind kind, PlannerContext& ctx, const Query& query, Clock::time_point t0,
              QueryResult& out) {
  Scene& scene = ctx.scene;
  Roadmap& map = ctx.roadmap;
  const EffortModel& model = ctx.config.effort;
  const auto [sid, gid] = map.begin_query(query.start, query.goal, ctx.config.rewind);
  if (!validate_vertex(scene, ctx.cache, sid, query.start) ||
      !validate_vertex(scene, ctx.cache, gid, query.goal)) {
    out.endpoint_invalid = true;
    return;
  }
  Incumbent inc;
  auto in_budget = [&] { return seconds_since(t0) < query.stop.budget_seconds; };
  auto done = [&] {
    return query.stop.first_solution ||
           (query.stop.target_cost > 0.0 && out.cost <= query.stop.target_cost);
  };

  for (int batch = 0; batch < query.stop.max_batches && in_budget(); ++batch) {
    (void)map.refine_approximation(scene, ctx.rng, ctx.config.batch_size, inc.c_best, &ctx.cache);
    out.batches = batch + 1;

    if (kind == PlannerKind::kEirmStar) {
      while (in_budget()) {
        const bool effort_phase = !out.found;
        std::unordered_map<int, double> e_hat;
        if (effort_phase) {
          const Parametrization& theta = scene.active();
          e_hat = reverse_effort(map, ctx.cache, theta.key_full(), theta.key_moved(), model);
        }
        std::vector<int> ids;
        double cost = kInf;
        const ForwardOutcome oc =
            eirm_forward(map, scene, ctx.cache, ctx.ledger, model, e_hat, effort_phase,
                         inc.c_best, ctx.config.claim_reusable, ids, cost);
        if (oc == ForwardOutcome::kInvalidated) continue;
        if (oc == ForwardOutcome::kExhausted) break;
        inc.offer(out, make_path(map, ids), cost, seconds_since(t0));
        if (done()) return;
        if (!effort_phase) break;  // the graph optimum is validated
      }
      continue;
    }

    while (in_budget()) {
      const bool effort_phase = kind == PlannerKind::kEoLazyPrmStar && !out.found;
      const SearchResult sr = effort_phase
                                  ? search_effort_ordered(map, ctx.cache, scene, model)
                                  : search_cost_ordered(map, ctx.cache, scene, inc.c_best);
      if (!sr.found) break;
      PathCandidate candidate = make_path(map, sr.ids);
      if (!validate_path(scene, ctx.cache, model, ctx.ledger, candidate)) continue;
      inc.offer(out, std::move(candidate), sr.cost, seconds_since(t0));
      if (done()) return;
      if (!effort_phase) break;  // validated cost-ordered result is graph-optimal
    }
  }
}

void rrt_plan(PlannerContext& ctx, const Query& query, Clock::time_point t0, QueryResult& out) {
  Scene& scene = ctx.scene;
  const EffortModel& model = ctx.config.effort;
  const ConfigBounds& bounds = ctx.roadmap.bounds();
  const double step = ctx.config.rrt_steer_resolutions * model.resolution;

  struct Tree {
    std::vector<Config> qs;
    std::vector<int> parent;
  };
  Tree from_start{{query.start}, {-1}};
  Tree from_goal{{query.goal}, {-1}};
  Tree* ta = &from_start;
  Tree* tb = &from_goal;

  auto nearest = [](const Tree& t, const Config& x) {
    std::size_t best = 0;
    double best_d = config_distance(t.qs[0], x);
    for (std::size_t i = 1; i < t.qs.size(); ++i) {
      const double d = config_distance(t.qs[i], x);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  };
  auto segment_free = [&](const Config& from, const Config& to) {
    for (const Config& q : interpolation_sequence(from, to, model))
      if (scene.monolithic_collides(q)) return false;
    return !scene.monolithic_collides(to);
  };

  enum class Ext { kTrapped, kAdvanced, kReached };
  auto extend = [&](Tree& t, const Config& target, std::size_t& out_idx) {
    const std::size_t ni = nearest(t, target);
    const double d = config_distance(t.qs[ni], target);
    if (d < 1e-12) {
      out_idx = ni;
      return Ext::kReached;
    }
    const bool reaches = d <= step;
    Config q_new = reaches ? target : config_lerp(t.qs[ni], target, step / d);
    if (!segment_free(t.qs[ni], q_new)) return Ext::kTrapped;
    t.qs.push_back(std::move(q_new));
    t.parent.push_back(static_cast<int>(ni));
    out_idx = t.qs.size() - 1;
    return reaches ? Ext::kReached : Ext::kAdvanced;
  };
  auto chain = [](const Tree& t, std::size_t leaf) {
    std::vector<Config> out;
    for (int i = static_cast<int>(leaf); i >= 0; i = t.parent[static_cast<std::size_t>(i)])
      out.push_back(t.qs[static_cast<std::size_t>(i)]);
    return out;  // leaf first, root last
  };

  Config q_rand(bounds.dim());
  long iterations = 0;
  while (seconds_since(t0) < query.stop.budget_seconds &&
         iterations < query.stop.max_iterations) {
    ++iterations;
    for (std::size_t d = 0; d < q_rand.size(); ++d)
      q_rand[d] = ctx.rng.uniform(bounds.lower[d], bounds.upper[d]);

    std::size_t ia = 0;
    if (extend(*ta, q_rand, ia) != Ext::kTrapped) {
      const Config q_new = ta->qs[ia];
      std::size_t ib = 0;
      Ext eb;
      do {
        eb = extend(*tb, q_new, ib);
      } while (eb == Ext::kAdvanced && seconds_since(t0) < query.stop.budget_seconds);
      if (eb == Ext::kReached) {
        std::vector<Config> half_a = chain(*ta, ia);
        std::vector<Config> half_b = chain(*tb, ib);
        if (ta != &from_start) std::swap(half_a, half_b);
        std::reverse(half_a.begin(), half_a.end());  // root (start) first
        PathCandidate path;
        path.configs = std::move(half_a);
        // the junction configuration appears in both halves
        for (std::size_t i = 1; i < half_b.size(); ++i) path.configs.push_back(half_b[i]);
        path.ids.resize(path.configs.size());
        for (std::size_t i = 0; i < path.ids.size(); ++i) path.ids[i] = static_cast<int>(i);
        const double cost = path.cost();
        out.path = std::move(path);
        out.cost = cost;
        out.c_first = cost;
        out.t_first_s = seconds_since(t0);
        out.found = true;
        out.history.push_back({out.t_first_s, cost});
        return;
      }
    }
    std::swap(ta, tb);
  }
}

}  // namespace

QueryResult plan(PlannerKind kind, PlannerContext& ctx, const Query& query) {
  const auto t0 = Clock::now();
  QueryResult out;
  const CheckCounters before = ctx.scene.counters();
  ctx.ledger.e_claimed = 0.0;

  if (query.start.size() != ctx.roadmap.bounds().dim() ||
      query.goal.size() != ctx.roadmap.bounds().dim())
    throw std::invalid_argument("query endpoints do not match the space dimension");

  if (kind == PlannerKind::kRrtConnect) {
    if (ctx.scene.is_valid(query.start, true, true, true).any() ||
        ctx.scene.is_valid(query.goal, true, true, true).any())
      out.endpoint_invalid = true;
    else
      rrt_plan(ctx, query, t0, out);
  } else {
    prm_plan(kind, ctx, query, t0, out);
  }
  out.checks = ctx.scene.counters() - before;
  return out;
}

}  // namespace mqplan
