#pragma once

// Monte Carlo experiment engine.
//
// A config names an (arch, task), a parameter grid and a trial count. Every
// trial gets the seed split(master, fnv1a(cell id), trial), so results depend
// only on the config, never on scheduling; per-trial outcomes are stored by
// index and reduced in order.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vsacap {

using CellParams = std::map<std::string, double>;

// Thrown for unreadable or unwritable files; the CLI maps it to exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string arch;
  std::string task;
  std::map<std::string, std::vector<double>> grid;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::string out;  // empty: caller decides
  unsigned threads = 1;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  // Nonempty grid, trials >= 1, registered (arch, task).
  void validate() const;
};

struct TrialOutcome {
  double estimate = 0;
  double truth = 0;
  bool fail = false;
};

struct TrialRecord {
  std::size_t cell = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  TrialOutcome outcome;
  double abs_err = 0;
};

struct CellSummary {
  CellParams params;  // resolved: sized m (and k) filled in
  std::string id;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double mean_abs_err = 0;
  double max_abs_err = 0;
  double mean_estimate = 0;
  double mean_truth = 0;
  std::string status = "ok";

  double fail_rate() const { return trials ? static_cast<double>(failures) / static_cast<double>(trials) : 0.0; }
};

struct TaskInfo {
  std::string arch;
  std::string task;
  std::string description;
};

const std::vector<TaskInfo>& registered_tasks();
bool is_registered(std::string_view arch, std::string_view task);

// Fills defaults, then m (and k) from the task's sizing rule when absent.
// Throws std::invalid_argument on invalid parameters.
CellParams resolve_cell(std::string_view arch, std::string_view task, CellParams params);
// One seeded trial on a resolved cell.
TrialOutcome run_trial(std::string_view arch, std::string_view task, const CellParams& params, std::uint64_t seed);

// Canonical cell id: "arch/task" then sorted key=value pairs.
std::string cell_id(std::string_view arch, std::string_view task, const CellParams& params);
std::uint64_t trial_seed(std::uint64_t master, std::string_view cell, std::uint64_t trial);

// Cartesian product of the grid, in sorted-key lexicographic order.
std::vector<CellParams> expand_grid(const std::map<std::string, std::vector<double>>& grid);

// Runs every cell; output order is the grid order whatever the thread count.
std::vector<CellSummary> run(const ExperimentConfig& config, std::vector<TrialRecord>* records = nullptr);

// Fixed CSV columns, then one row per cell.
inline constexpr std::string_view kCsvHeader =
    "arch,task,m,k,n,d,L,eps,delta,trials,failures,emp_fail_rate,mean_abs_err,max_abs_err,seed,rng_version,status";
void write_csv(std::ostream& os, const ExperimentConfig& config, const std::vector<CellSummary>& cells);
// Extras per cell (all parameters, mean estimate/truth) for the JSON sidecar.
nlohmann::json sidecar_json(const ExperimentConfig& config, const std::vector<CellSummary>& cells);
// Shortest round-trip decimal form.
std::string format_double(double v);

struct CalibrationResult {
  std::uint64_t m_star = 0;
  std::uint64_t m_theory = 0;
  double ratio = 0;  // m_theory / m_star
  bool lower_bound_hit = false;
  bool within_theory = false;
  double fail_rate_at_m_star = 0;
  std::uint64_t evaluations = 0;

  nlohmann::json to_json() const;
};

// Smallest m whose empirical failure rate is within target + 3 sigma, by binary
// search over [m_min, 4 m_theory] with common random numbers across m.
// Requires trials >= 100; throws std::runtime_error if the upper end fails.
CalibrationResult calibrate(std::string_view arch, std::string_view task, CellParams params, double target,
                            std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

}  // namespace vsacap
