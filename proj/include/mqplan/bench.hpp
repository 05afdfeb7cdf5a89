#pragma once

// Benchmark harness: scenario files (versioned JSON schema), a seeded runner
// that executes a scenario with a fresh planning session per run, summary
// statistics (median with a nonparametric confidence interval from exact
// binomial order-statistic ranks, success-over-time, cost evolution), and
// CSV/JSON emitters. Counters are bit-reproducible for a fixed seed; wall
// times are measured but never feed back into the run itself.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mqplan/manip.hpp"
#include "mqplan/path_validation.hpp"

namespace mqplan {

/// Buildable description of a robot; kept alongside the built model so
/// scenarios can be serialized back out unchanged.
struct RobotSpec {
  std::string type{"free_flyer"};  ///< "free_flyer" or "chain"
  Shape shape{Disc{0.1}};          ///< free-flyer body
  bool rotating{false};
  Pose base;                    ///< chain anchor
  std::vector<LinkSpec> links;  ///< chain links, proximal to distal

  [[nodiscard]] RobotModel build() const;
};

struct Scenario {
  int schema_version{1};
  std::string name;
  ConfigBounds bounds;
  RobotSpec robot;
  std::vector<StaticBody> statics;
  std::vector<MovableObject> movables;
  PlannerConfig planner;
  ActionSequence sequence;
  std::vector<FamilyInstance> family;  ///< optional related instances

  [[nodiscard]] Scene make_scene() const;
};

/// Parses and fully validates a scenario; errors carry the origin and the
/// offending field or action index.
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);
[[nodiscard]] Scenario parse_scenario(const std::string& text, const std::string& origin);
[[nodiscard]] std::string serialize_scenario(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

enum class RunMode {
  kFirst,    ///< stop every action at its first solution
  kAnytime,  ///< keep refining each action until the budget
};

struct BenchmarkOptions {
  int runs{100};
  std::uint64_t seed0{1};
  double budget_s{10.0};  ///< per action
  RunMode mode{RunMode::kFirst};
  int max_batches{1000};  ///< deterministic cap alongside the wall budget
  SessionPolicy policy{SessionPolicy::kFullReuse};
};

struct ActionStats {
  bool success{false};
  bool verified{false};  ///< returned path passed uncached monolithic validation
  double t_init_s{0.0};
  double c_init{0.0};
  double wall_s{0.0};
  CheckCounters checks;              ///< new primitive checks this action
  std::vector<CostSample> history;   ///< improvement events, t from action start
  PathCandidate path;                ///< final path when success
};

struct RunRecord {
  std::uint64_t seed{0};
  bool success{false};      ///< every action solved
  double t_solved_s{0.0};   ///< cumulative time of the last initial solution
  double c_init_total{0.0};  ///< sum of per-action initial costs
  std::vector<ActionStats> actions;   ///< attempted actions, in order
  std::vector<CostSample> combined;   ///< total-cost improvement events, cumulative time
};

/// Runs the scenario `opt.runs` times with seeds seed0, seed0+1, ... using a
/// fresh session per run. Failures are recorded, never thrown.
[[nodiscard]] std::vector<RunRecord> run_benchmark(const Scenario& scenario, PlannerKind kind,
                                                   const BenchmarkOptions& opt);

struct MultiqueryRow {
  int shuffle{0};
  int query{0};     ///< 1-based position in the shuffled order
  int instance{0};  ///< original instance index
  std::uint64_t seed{0};
  double t_init_s{0.0};
  double c_init{0.0};
  std::uint64_t checks{0};
  bool success{false};
  bool verified{false};  ///< every returned path passed monolithic validation
};

/// Solves the scenario's instance family in `shuffles` random orders, one
/// session per shuffle, reusing per the session policy.
[[nodiscard]] std::vector<MultiqueryRow> run_family(const Scenario& scenario, PlannerKind kind,
                                                    const BenchmarkOptions& opt, int shuffles);

struct SummaryStats {
  double median{0.0};
  double lo{0.0};
  double hi{0.0};
};

/// Median (midpoint of the two central order statistics) plus a nonparametric
/// confidence interval: the (l, n+1-l) order statistics where l is the
/// largest rank whose Binomial(n, 1/2) lower tail stays within (1-level)/2,
/// clamped to [1, n]. Failures encoded as +inf sort last and propagate.
[[nodiscard]] SummaryStats median_ci(std::vector<double> samples, double level = 0.95);

/// 64 log-spaced instants from 1 ms (or the budget, if smaller) to the budget.
[[nodiscard]] std::vector<double> time_grid(double budget_s, int points = 64);

/// Fraction of runs fully solved by each grid instant; nondecreasing.
[[nodiscard]] std::vector<double> success_curve(const std::vector<RunRecord>& records,
                                                const std::vector<double>& grid);

/// Best cost achieved at or before t among time-sorted improvement events;
/// +inf before the first.
[[nodiscard]] double cost_at(const std::vector<CostSample>& events, double t);

/// Writes runs.csv, summary.csv, success_curve.csv, cost_evolution.csv and
/// records.json into dir (created if needed). Empty records give header-only
/// tables.
void emit_results(const std::filesystem::path& dir, const Scenario& scenario, PlannerKind kind,
                  const BenchmarkOptions& opt, const std::vector<RunRecord>& records);

/// Writes multiquery.csv (per-query times across shuffled family orders).
void emit_multiquery(const std::filesystem::path& dir, const Scenario& scenario, PlannerKind kind,
                     const std::vector<MultiqueryRow>& rows);

}  // namespace mqplan
