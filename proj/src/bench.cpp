#include "mqplan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mqplan/random.hpp"

namespace mqplan {
namespace {

using json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// ── positioned json access ──────────────────────────────────────────────────

struct Loc {
  std::string origin;
  std::string where;

  [[nodiscard]] Loc at(const std::string& field) const {
    return {origin, where.empty() ? field : where + "." + field};
  }
};

[[noreturn]] void fail_at(const Loc& loc, const std::string& what) {
  throw std::invalid_argument("scenario " + loc.origin + ": " + loc.where +
                              (loc.where.empty() ? "" : ": ") + what);
}

const json& need(const json& j, const char* key, const Loc& loc) {
  if (!j.is_object()) fail_at(loc, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail_at(loc, std::string("missing field '") + key + "'");
  return *it;
}

double as_num(const json& v, const Loc& loc) {
  if (!v.is_number()) fail_at(loc, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const Loc& loc) {
  if (!v.is_number_integer()) fail_at(loc, "expected an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const Loc& loc) {
  if (!v.is_boolean()) fail_at(loc, "expected a boolean");
  return v.get<bool>();
}

std::string as_str(const json& v, const Loc& loc) {
  if (!v.is_string()) fail_at(loc, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_vec(const json& v, const Loc& loc) {
  if (!v.is_array()) fail_at(loc, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_num(e, loc));
  return out;
}

Vec2 as_vec2(const json& v, const Loc& loc) {
  const std::vector<double> xy = as_vec(v, loc);
  if (xy.size() != 2) fail_at(loc, "expected exactly 2 numbers");
  return {xy[0], xy[1]};
}

// ── geometry <-> json ───────────────────────────────────────────────────────

json pose_json(const Pose& p) {
  return json{{"angle", p.angle}, {"xy", {p.t.x, p.t.y}}};
}

Pose as_pose(const json& v, const Loc& loc) {
  return {as_num(need(v, "angle", loc), loc.at("angle")), as_vec2(need(v, "xy", loc), loc.at("xy"))};
}

json shape_json(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return {{"type", "disc"}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          return {{"type", "axis_box"}, {"half", {s.half.x, s.half.y}}};
        } else if constexpr (std::is_same_v<T, OrientedBox>) {
          return {{"type", "oriented_box"}, {"half", {s.half.x, s.half.y}}};
        } else if constexpr (std::is_same_v<T, Capsule>) {
          return {{"type", "capsule"}, {"radius", s.radius}, {"half_length", s.half_length}};
        } else {
          json verts = json::array();
          for (const Vec2& v : s.vertices) verts.push_back({v.x, v.y});
          return {{"type", "polygon"}, {"vertices", verts}};
        }
      },
      shape);
}

Shape as_shape(const json& v, const Loc& loc) {
  const std::string type = as_str(need(v, "type", loc), loc.at("type"));
  if (type == "disc") return Disc{as_num(need(v, "radius", loc), loc.at("radius"))};
  if (type == "axis_box") return AxisBox{as_vec2(need(v, "half", loc), loc.at("half"))};
  if (type == "oriented_box") return OrientedBox{as_vec2(need(v, "half", loc), loc.at("half"))};
  if (type == "capsule")
    return Capsule{as_num(need(v, "radius", loc), loc.at("radius")),
                   as_num(need(v, "half_length", loc), loc.at("half_length"))};
  if (type == "polygon") {
    const json& verts = need(v, "vertices", loc);
    if (!verts.is_array()) fail_at(loc.at("vertices"), "expected an array");
    ConvexPolygon poly;
    for (const auto& e : verts) poly.vertices.push_back(as_vec2(e, loc.at("vertices")));
    return poly;
  }
  fail_at(loc.at("type"), "unknown shape type '" + type + "'");
}

// ── scenario <-> json ───────────────────────────────────────────────────────

json actions_json(const ActionSequence& seq) {
  json out = json::array();
  for (const Action& a : seq.actions) {
    json states = json::array();
    for (const auto& [id, st] : a.parametrization.states)
      states.push_back({{"id", id}, {"parent", st.parent_gripper}, {"pose", pose_json(st.rel)}});
    out.push_back({{"start", a.start},
                   {"goal", a.goal},
                   {"moved", a.parametrization.moved},
                   {"states", states}});
  }
  return out;
}

ActionSequence as_actions(const json& v, const Loc& loc) {
  if (!v.is_array()) fail_at(loc, "expected an array");
  ActionSequence seq;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Loc al = loc.at("[" + std::to_string(i) + "]");
    const json& a = v[i];
    Action action;
    action.start = as_vec(need(a, "start", al), al.at("start"));
    action.goal = as_vec(need(a, "goal", al), al.at("goal"));
    const json& moved = need(a, "moved", al);
    if (!moved.is_array()) fail_at(al.at("moved"), "expected an array");
    for (const auto& m : moved)
      action.parametrization.moved.push_back(as_int(m, al.at("moved")));
    const json& states = need(a, "states", al);
    if (!states.is_array()) fail_at(al.at("states"), "expected an array");
    for (const auto& st : states) {
      const Loc sl = al.at("states");
      const int id = as_int(need(st, "id", sl), sl.at("id"));
      ObjectState os;
      os.parent_gripper = as_int(need(st, "parent", sl), sl.at("parent"));
      os.rel = as_pose(need(st, "pose", sl), sl.at("pose"));
      if (!action.parametrization.states.emplace(id, os).second)
        fail_at(sl, "duplicate state for object " + std::to_string(id));
    }
    seq.actions.push_back(std::move(action));
  }
  return seq;
}

json movables_json(const std::vector<MovableObject>& movables) {
  json out = json::array();
  for (const MovableObject& m : movables)
    out.push_back({{"id", m.id}, {"shape", shape_json(m.shape)}});
  return out;
}

std::vector<MovableObject> as_movables(const json& v, const Loc& loc) {
  if (!v.is_array()) fail_at(loc, "expected an array");
  std::vector<MovableObject> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Loc ml = loc.at("[" + std::to_string(i) + "]");
    out.push_back({as_int(need(v[i], "id", ml), ml.at("id")),
                   as_shape(need(v[i], "shape", ml), ml.at("shape"))});
  }
  return out;
}

void check_instance(const Scenario& s, const std::vector<MovableObject>& movables,
                    const ActionSequence& seq, const Loc& loc) {
  try {
    Scene scene{s.robot.build(), s.statics, movables};
    if (static_cast<std::size_t>(scene.dof()) != s.bounds.dim())
      fail_at(loc, "bounds dimension " + std::to_string(s.bounds.dim()) +
                       " does not match the robot's " + std::to_string(scene.dof()));
    for (std::size_t i = 0; i < seq.actions.size(); ++i)
      if (!s.bounds.contains(seq.actions[i].start) || !s.bounds.contains(seq.actions[i].goal))
        fail_at(loc.at("[" + std::to_string(i) + "]"), "start or goal outside the bounds");
    validate_sequence(std::move(scene), seq);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.rfind("scenario ", 0) == 0) throw;
    fail_at(loc, what);
  }
}

}  // namespace

RobotModel RobotSpec::build() const {
  if (type == "free_flyer") return RobotModel::free_flyer(shape, rotating);
  if (type == "chain") return RobotModel::chain(base, links);
  throw std::invalid_argument("unknown robot type '" + type + "'");
}

Scene Scenario::make_scene() const { return Scene{robot.build(), statics, movables}; }

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument("scenario " + origin + ": " + e.what());
  }
  const Loc root{origin, ""};
  Scenario s;
  s.schema_version = as_int(need(j, "schema", root), root.at("schema"));
  if (s.schema_version != 1)
    fail_at(root.at("schema"), "unsupported version " + std::to_string(s.schema_version));
  s.name = as_str(need(j, "name", root), root.at("name"));

  const json& bounds = need(j, "bounds", root);
  s.bounds.lower = as_vec(need(bounds, "lower", root.at("bounds")), root.at("bounds.lower"));
  s.bounds.upper = as_vec(need(bounds, "upper", root.at("bounds")), root.at("bounds.upper"));
  if (s.bounds.lower.size() != s.bounds.upper.size())
    fail_at(root.at("bounds"), "lower and upper differ in length");
  for (std::size_t i = 0; i < s.bounds.lower.size(); ++i)
    if (!(s.bounds.lower[i] < s.bounds.upper[i]))
      fail_at(root.at("bounds"), "lower must be strictly below upper");

  const json& robot = need(j, "robot", root);
  const Loc rl = root.at("robot");
  s.robot.type = as_str(need(robot, "type", rl), rl.at("type"));
  if (s.robot.type == "free_flyer") {
    s.robot.shape = as_shape(need(robot, "shape", rl), rl.at("shape"));
    s.robot.rotating = as_bool(need(robot, "rotating", rl), rl.at("rotating"));
  } else if (s.robot.type == "chain") {
    s.robot.base = as_pose(need(robot, "base", rl), rl.at("base"));
    const json& links = need(robot, "links", rl);
    if (!links.is_array() || links.empty()) fail_at(rl.at("links"), "expected a nonempty array");
    for (const auto& l : links)
      s.robot.links.push_back({as_num(need(l, "length", rl), rl.at("links.length")),
                               as_shape(need(l, "shape", rl), rl.at("links.shape"))});
  } else {
    fail_at(rl.at("type"), "unknown robot type '" + s.robot.type + "'");
  }

  if (const auto it = j.find("statics"); it != j.end()) {
    const Loc sl = root.at("statics");
    if (!it->is_array()) fail_at(sl, "expected an array");
    for (const auto& b : *it)
      s.statics.push_back(
          {as_shape(need(b, "shape", sl), sl.at("shape")), as_pose(need(b, "pose", sl), sl.at("pose"))});
  }
  if (const auto it = j.find("movables"); it != j.end())
    s.movables = as_movables(*it, root.at("movables"));

  if (const auto it = j.find("planner"); it != j.end()) {
    const Loc pl = root.at("planner");
    const json& p = *it;
    if (const auto f = p.find("resolution"); f != p.end())
      s.planner.effort.resolution = as_num(*f, pl.at("resolution"));
    if (const auto f = p.find("order"); f != p.end()) {
      const std::string order = as_str(*f, pl.at("order"));
      if (order == "bisection")
        s.planner.effort.order = InterpolationOrder::kBisection;
      else if (order == "sequential")
        s.planner.effort.order = InterpolationOrder::kSequential;
      else
        fail_at(pl.at("order"), "expected 'bisection' or 'sequential'");
    }
    if (const auto f = p.find("unit_scale"); f != p.end())
      s.planner.effort.unit_scale = as_num(*f, pl.at("unit_scale"));
    if (const auto f = p.find("reusable_includes_os"); f != p.end())
      s.planner.effort.reusable_includes_os = as_bool(*f, pl.at("reusable_includes_os"));
    if (const auto f = p.find("batch_size"); f != p.end())
      s.planner.batch_size = as_int(*f, pl.at("batch_size"));
    if (const auto f = p.find("rewind"); f != p.end()) s.planner.rewind = as_bool(*f, pl.at("rewind"));
    if (const auto f = p.find("claim_reusable"); f != p.end())
      s.planner.claim_reusable = as_bool(*f, pl.at("claim_reusable"));
    if (const auto f = p.find("rrt_steer_resolutions"); f != p.end())
      s.planner.rrt_steer_resolutions = as_num(*f, pl.at("rrt_steer_resolutions"));
    if (!(s.planner.effort.resolution > 0.0)) fail_at(pl.at("resolution"), "must be positive");
    if (s.planner.batch_size < 1) fail_at(pl.at("batch_size"), "must be at least 1");
  }

  s.sequence = as_actions(need(j, "actions", root), root.at("actions"));

  if (const auto it = j.find("family"); it != j.end()) {
    const Loc fl = root.at("family");
    if (!it->is_array()) fail_at(fl, "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Loc il = fl.at("[" + std::to_string(i) + "]");
      const json& inst = (*it)[i];
      FamilyInstance fi;
      fi.movables = inst.contains("movables") ? as_movables(inst["movables"], il.at("movables"))
                                              : s.movables;
      fi.sequence =
          inst.contains("actions") ? as_actions(inst["actions"], il.at("actions")) : s.sequence;
      s.family.push_back(std::move(fi));
    }
  }

  check_instance(s, s.movables, s.sequence, root.at("actions"));
  for (std::size_t i = 0; i < s.family.size(); ++i)
    check_instance(s, s.family[i].movables, s.family[i].sequence,
                   root.at("family.[" + std::to_string(i) + "]"));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("scenario " + path.string() + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.string());
}

std::string serialize_scenario(const Scenario& s) {
  json j;
  j["schema"] = s.schema_version;
  j["name"] = s.name;
  j["bounds"] = {{"lower", s.bounds.lower}, {"upper", s.bounds.upper}};
  json robot;
  robot["type"] = s.robot.type;
  if (s.robot.type == "chain") {
    robot["base"] = pose_json(s.robot.base);
    json links = json::array();
    for (const LinkSpec& l : s.robot.links)
      links.push_back({{"length", l.length}, {"shape", shape_json(l.shape)}});
    robot["links"] = links;
  } else {
    robot["shape"] = shape_json(s.robot.shape);
    robot["rotating"] = s.robot.rotating;
  }
  j["robot"] = robot;
  json statics = json::array();
  for (const StaticBody& b : s.statics)
    statics.push_back({{"shape", shape_json(b.shape)}, {"pose", pose_json(b.pose)}});
  j["statics"] = statics;
  j["movables"] = movables_json(s.movables);
  j["planner"] = {{"resolution", s.planner.effort.resolution},
                  {"order", s.planner.effort.order == InterpolationOrder::kBisection
                                ? "bisection"
                                : "sequential"},
                  {"unit_scale", s.planner.effort.unit_scale},
                  {"reusable_includes_os", s.planner.effort.reusable_includes_os},
                  {"batch_size", s.planner.batch_size},
                  {"rewind", s.planner.rewind},
                  {"claim_reusable", s.planner.claim_reusable},
                  {"rrt_steer_resolutions", s.planner.rrt_steer_resolutions}};
  j["actions"] = actions_json(s.sequence);
  if (!s.family.empty()) {
    json family = json::array();
    for (const FamilyInstance& fi : s.family)
      family.push_back(
          {{"movables", movables_json(fi.movables)}, {"actions", actions_json(fi.sequence)}});
    j["family"] = family;
  }
  return j.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_scenario(s);
}

// ── runner ──────────────────────────────────────────────────────────────────

namespace {

RunRecord run_once(const Scenario& sc, PlannerKind kind, const BenchmarkOptions& opt,
                   std::uint64_t seed) {
  PlanningSession session(sc.make_scene(), sc.bounds, kind, sc.planner, opt.policy, seed);
  StopCondition stop;
  stop.budget_seconds = opt.budget_s;
  stop.first_solution = opt.mode == RunMode::kFirst;
  stop.max_batches = opt.max_batches;

  RunRecord rec;
  rec.seed = seed;
  bool all = true;
  for (const Action& action : sc.sequence.actions) {
    ActionStats st;
    const auto t0 = std::chrono::steady_clock::now();
    QueryResult r = session.solve_action(action, stop);
    st.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    st.success = r.found;
    st.t_init_s = r.found ? r.t_first_s : kInf;
    st.c_init = r.found ? r.c_first : kInf;
    st.checks = r.checks;
    st.history = r.history;
    if (r.found) {
      st.path = std::move(r.path);
      // outside the timed region; uses fresh monolithic checks, not the cache
      st.verified = monolithic_path_valid(session.scene(), sc.planner.effort, st.path, true);
    }
    rec.actions.push_back(std::move(st));
    if (!rec.actions.back().success) {
      all = false;
      break;
    }
  }
  rec.success = all && rec.actions.size() == sc.sequence.actions.size();
  if (rec.success && !rec.actions.empty()) {
    double before = 0.0, base = 0.0;
    for (std::size_t k = 0; k + 1 < rec.actions.size(); ++k) {
      before += rec.actions[k].wall_s;
      base += rec.actions[k].history.back().cost;  // frozen at its final cost
    }
    rec.t_solved_s = before + rec.actions.back().t_init_s;
    rec.c_init_total = 0.0;
    for (const ActionStats& a : rec.actions) rec.c_init_total += a.c_init;
    for (const CostSample& e : rec.actions.back().history)
      rec.combined.push_back({before + e.t_s, base + e.cost});
  } else {
    rec.t_solved_s = kInf;
    rec.c_init_total = kInf;
  }
  return rec;
}

}  // namespace

std::vector<RunRecord> run_benchmark(const Scenario& scenario, PlannerKind kind,
                                     const BenchmarkOptions& opt) {
  if (opt.runs < 1) throw std::invalid_argument("run_benchmark: runs must be at least 1");
  std::vector<RunRecord> out;
  out.reserve(static_cast<std::size_t>(opt.runs));
  for (int i = 0; i < opt.runs; ++i)
    out.push_back(run_once(scenario, kind, opt, opt.seed0 + static_cast<std::uint64_t>(i)));
  return out;
}

std::vector<MultiqueryRow> run_family(const Scenario& scenario, PlannerKind kind,
                                      const BenchmarkOptions& opt, int shuffles) {
  if (shuffles < 1) throw std::invalid_argument("run_family: shuffles must be at least 1");
  std::vector<FamilyInstance> base = scenario.family;
  if (base.empty()) base.push_back({scenario.movables, scenario.sequence});

  StopCondition stop;
  stop.budget_seconds = opt.budget_s;
  stop.first_solution = opt.mode == RunMode::kFirst;
  stop.max_batches = opt.max_batches;

  std::vector<MultiqueryRow> rows;
  for (int s = 0; s < shuffles; ++s) {
    const std::uint64_t seed = opt.seed0 + static_cast<std::uint64_t>(s);
    // order stream independent of the planner stream inside the session
    Rng order_rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<int> order(base.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[static_cast<std::size_t>(
                                  order_rng.uniform_int(0, static_cast<int>(i) - 1))]);

    std::vector<FamilyInstance> shuffled;
    shuffled.reserve(order.size());
    for (const int idx : order) shuffled.push_back(base[static_cast<std::size_t>(idx)]);

    PlanningSession session(scenario.make_scene(), scenario.bounds, kind, scenario.planner,
                            opt.policy, seed);
    for (std::size_t q = 0; q < shuffled.size(); ++q) {
      // one instance per call so each returned path can be re-verified while
      // the session still holds that instance's movables
      const SequenceResult result = session.solve_family({shuffled[q]}, stop)[0];
      MultiqueryRow row;
      row.shuffle = s;
      row.query = static_cast<int>(q) + 1;
      row.instance = order[q];
      row.seed = seed;
      row.success = result.solved;
      row.verified = result.solved;
      double t = 0.0, c = 0.0;
      for (std::size_t a = 0; a < result.actions.size(); ++a) {
        const QueryResult& r = result.actions[a].result;
        row.checks += r.checks.total();
        if (r.found) {
          t += r.t_first_s;
          c += r.c_first;
          session.scene().update_parametrization(
              shuffled[q].sequence.actions[a].parametrization);
          if (!monolithic_path_valid(session.scene(), scenario.planner.effort, r.path, true))
            row.verified = false;
        }
      }
      row.t_init_s = row.success ? t : kInf;
      row.c_init = row.success ? c : kInf;
      rows.push_back(row);
    }
  }
  return rows;
}

// ── statistics ──────────────────────────────────────────────────────────────

SummaryStats median_ci(std::vector<double> samples, double level) {
  if (samples.empty()) throw std::invalid_argument("median_ci: no samples");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("median_ci: level must be inside (0, 1)");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();

  SummaryStats out;
  out.median = (n % 2 == 1) ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);

  // largest rank l in [1, n] whose Binomial(n, 1/2) lower tail P(X <= l-1)
  // stays within (1 - level)/2; the upper rank mirrors it
  const auto tail = static_cast<long double>((1.0 - level) / 2.0);
  std::size_t l = 1;
  long double term = std::ldexp(1.0L, -static_cast<int>(n));  // C(n,0)/2^n
  long double cdf = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    cdf += term;
    if (cdf > tail) break;
    l = k + 1;
    term *= static_cast<long double>(n - k) / static_cast<long double>(k + 1);
  }
  const std::size_t u = std::min(n, n + 1 - l);
  out.lo = samples[l - 1];
  out.hi = samples[u - 1];
  return out;
}

std::vector<double> time_grid(double budget_s, int points) {
  if (!(budget_s > 0.0)) throw std::invalid_argument("time_grid: budget must be positive");
  if (points < 1) throw std::invalid_argument("time_grid: need at least one point");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double lo = std::min(1e-3, budget_s);
  if (points == 1) {
    grid[0] = budget_s;
    return grid;
  }
  const double span = std::log(budget_s / lo);
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = lo * std::exp(span * i / (points - 1));
  grid.front() = lo;
  grid.back() = budget_s;
  return grid;
}

std::vector<double> success_curve(const std::vector<RunRecord>& records,
                                  const std::vector<double>& grid) {
  std::vector<double> out(grid.size(), 0.0);
  if (records.empty()) return out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::size_t count = 0;
    for (const RunRecord& r : records)
      if (r.success && r.t_solved_s <= grid[i]) ++count;
    out[i] = static_cast<double>(count) / static_cast<double>(records.size());
  }
  return out;
}

double cost_at(const std::vector<CostSample>& events, double t) {
  double best = kInf;
  for (const CostSample& e : events) {
    if (e.t_s > t) break;
    best = e.cost;
  }
  return best;
}

// ── emitters ────────────────────────────────────────────────────────────────

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

json checks_json(const CheckCounters& c) {
  return {{"rs", c.rs}, {"ro", c.ro}, {"os", c.os}};
}

}  // namespace

void emit_results(const std::filesystem::path& dir, const Scenario& scenario, PlannerKind kind,
                  const BenchmarkOptions& opt, const std::vector<RunRecord>& records) {
  std::filesystem::create_directories(dir);
  const std::string scen = scenario.name;
  const std::string pl = planner_name(kind);

  {
    std::ofstream f = open_out(dir / "runs.csv");
    f << "scenario,planner,seed,action,t_init_s,c_init,checks_rs,checks_ro,checks_os,success\n";
    for (const RunRecord& r : records)
      for (std::size_t a = 0; a < r.actions.size(); ++a) {
        const ActionStats& st = r.actions[a];
        f << scen << ',' << pl << ',' << r.seed << ',' << a << ',' << num(st.t_init_s) << ','
          << num(st.c_init) << ',' << st.checks.rs << ',' << st.checks.ro << ',' << st.checks.os
          << ',' << (st.success ? 1 : 0) << '\n';
      }
  }
  {
    std::ofstream f = open_out(dir / "summary.csv");
    f << "scenario,planner,runs,success_rate,t_init_median,t_init_lo,t_init_hi,"
         "c_init_median,c_init_lo,c_init_hi\n";
    if (!records.empty()) {
      std::vector<double> times, costs;
      std::size_t solved = 0;
      for (const RunRecord& r : records) {
        times.push_back(r.t_solved_s);
        costs.push_back(r.c_init_total);
        if (r.success) ++solved;
      }
      const SummaryStats t = median_ci(times);
      const SummaryStats c = median_ci(costs);
      f << scen << ',' << pl << ',' << records.size() << ','
        << num(static_cast<double>(solved) / static_cast<double>(records.size())) << ','
        << num(t.median) << ',' << num(t.lo) << ',' << num(t.hi) << ',' << num(c.median) << ','
        << num(c.lo) << ',' << num(c.hi) << '\n';
    }
  }

  const std::vector<double> grid = time_grid(opt.budget_s);
  {
    std::ofstream f = open_out(dir / "success_curve.csv");
    f << "scenario,planner,t_s,fraction\n";
    if (!records.empty()) {
      const std::vector<double> curve = success_curve(records, grid);
      for (std::size_t i = 0; i < grid.size(); ++i)
        f << scen << ',' << pl << ',' << num(grid[i]) << ',' << num(curve[i]) << '\n';
    }
  }
  {
    std::ofstream f = open_out(dir / "cost_evolution.csv");
    f << "scenario,planner,t_s,cost_median,cost_lo,cost_hi\n";
    if (!records.empty()) {
      for (const double t : grid) {
        std::vector<double> costs;
        costs.reserve(records.size());
        for (const RunRecord& r : records) costs.push_back(cost_at(r.combined, t));
        const SummaryStats s = median_ci(costs);
        f << scen << ',' << pl << ',' << num(t) << ',' << num(s.median) << ',' << num(s.lo) << ','
          << num(s.hi) << '\n';
      }
    }
  }
  {
    json root;
    root["schema"] = 1;
    root["scenario"] = scen;
    root["planner"] = pl;
    root["mode"] = opt.mode == RunMode::kFirst ? "first" : "anytime";
    root["budget_s"] = opt.budget_s;
    root["runs"] = json::array();
    for (const RunRecord& r : records) {
      json run;
      run["seed"] = r.seed;
      run["success"] = r.success;
      run["t_solved_s"] = r.t_solved_s;  // non-finite values serialize as null
      run["c_init_total"] = r.c_init_total;
      run["actions"] = json::array();
      for (const ActionStats& a : r.actions) {
        json act;
        act["success"] = a.success;
        act["verified"] = a.verified;
        act["t_init_s"] = a.t_init_s;
        act["c_init"] = a.c_init;
        act["wall_s"] = a.wall_s;
        act["checks"] = checks_json(a.checks);
        json hist = json::array();
        for (const CostSample& e : a.history) hist.push_back({e.t_s, e.cost});
        act["history"] = hist;
        json path = json::array();
        for (const Config& q : a.path.configs) path.push_back(q);
        act["path"] = path;
        run["actions"].push_back(std::move(act));
      }
      root["runs"].push_back(std::move(run));
    }
    std::ofstream f = open_out(dir / "records.json");
    f << root.dump(2) << '\n';
  }
}

void emit_multiquery(const std::filesystem::path& dir, const Scenario& scenario, PlannerKind kind,
                     const std::vector<MultiqueryRow>& rows) {
  std::filesystem::create_directories(dir);
  std::ofstream f = open_out(dir / "multiquery.csv");
  f << "scenario,planner,shuffle,query,instance,seed,t_init_s,c_init,checks,success\n";
  for (const MultiqueryRow& r : rows)
    f << scenario.name << ',' << planner_name(kind) << ',' << r.shuffle << ',' << r.query << ','
      << r.instance << ',' << r.seed << ',' << num(r.t_init_s) << ',' << num(r.c_init) << ','
      << r.checks << ',' << (r.success ? 1 : 0) << '\n';
}

}  // namespace mqplan
