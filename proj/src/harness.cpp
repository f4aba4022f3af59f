#include "vsacap/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "vsacap/rng.hpp"

namespace vsacap {

namespace {

const std::vector<std::string> kKnownKeys = {"m",   "k",   "n",      "d",     "L",  "eps",   "delta", "M",    "K",
                                             "K_b", "n_v", "n_w",    "r",     "C",  "kind",  "overlap", "erase", "keep"};

std::string outcome_error(std::string_view arch, std::string_view task, const CellParams& p, std::uint64_t seed,
                          TrialOutcome& out) {
  try {
    out = run_trial(arch, task, p, seed);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

// Runs fn(i) for i in [0, count) on `threads` workers.
template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

double abs_err(const TrialOutcome& o) {
  const double e = std::abs(o.estimate - o.truth);
  return std::isfinite(e) ? e : std::numeric_limits<double>::infinity();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "arch" && key != "task" && key != "grid" && key != "trials" && key != "seed" && key != "out" &&
        key != "threads") {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  ExperimentConfig c;
  try {
    c.arch = j.at("arch").get<std::string>();
    c.task = j.at("task").get<std::string>();
    for (const auto& [key, value] : j.at("grid").items()) {
      if (value.is_array()) {
        c.grid[key] = value.get<std::vector<double>>();
      } else {
        c.grid[key] = {value.get<double>()};
      }
    }
    if (j.contains("trials")) c.trials = j["trials"].get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("threads")) c.threads = j["threads"].get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json g = nlohmann::json::object();
  for (const auto& [k, v] : grid) g[k] = v;
  nlohmann::json j = {{"arch", arch}, {"task", task}, {"grid", g}, {"trials", trials}, {"seed", seed},
                      {"threads", threads}};
  if (!out.empty()) j["out"] = out;
  return j;
}

void ExperimentConfig::validate() const {
  if (!is_registered(arch, task)) throw std::invalid_argument("unknown experiment task " + arch + "/" + task);
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (threads == 0) throw std::invalid_argument("threads must be at least 1");
  for (const auto& [key, values] : grid) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw std::invalid_argument("unknown grid parameter: " + key);
    }
    if (values.empty()) throw std::invalid_argument("grid parameter " + key + " has no values");
    for (double v : values) {
      if (!std::isfinite(v)) throw std::invalid_argument("grid parameter " + key + " is not finite");
    }
  }
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string cell_id(std::string_view arch, std::string_view task, const CellParams& params) {
  std::string id = std::string(arch) + "/" + std::string(task);
  for (const auto& [k, v] : params) id += ";" + k + "=" + format_double(v);
  return id;
}

std::uint64_t trial_seed(std::uint64_t master, std::string_view cell, std::uint64_t trial) {
  return rng::split(master, rng::fnv1a(cell), trial);
}

std::vector<CellParams> expand_grid(const std::map<std::string, std::vector<double>>& grid) {
  std::vector<CellParams> out{CellParams{}};
  for (const auto& [key, values] : grid) {
    std::vector<CellParams> next;
    next.reserve(out.size() * values.size());
    for (const auto& base : out) {
      for (double v : values) {
        auto c = base;
        c[key] = v;
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<CellSummary> run(const ExperimentConfig& config, std::vector<TrialRecord>* records) {
  config.validate();
  const auto grid_cells = expand_grid(config.grid);
  std::vector<CellSummary> cells(grid_cells.size());
  std::vector<std::size_t> live;
  for (std::size_t c = 0; c < grid_cells.size(); ++c) {
    auto& s = cells[c];
    s.id = cell_id(config.arch, config.task, grid_cells[c]);
    s.params = grid_cells[c];
    try {
      s.params = resolve_cell(config.arch, config.task, grid_cells[c]);
      live.push_back(c);
    } catch (const std::exception& e) {
      s.status = std::string("error:") + e.what();
    }
  }

  const std::uint64_t T = config.trials;
  std::vector<TrialRecord> recs(live.size() * T);
  std::vector<std::string> errors(recs.size());
  parallel_for(recs.size(), config.threads, [&](std::size_t i) {
    const auto c = live[i / T];
    auto& r = recs[i];
    r.cell = c;
    r.trial = i % T;
    r.seed = trial_seed(config.seed, cells[c].id, r.trial);
    errors[i] = outcome_error(config.arch, config.task, cells[c].params, r.seed, r.outcome);
    r.abs_err = abs_err(r.outcome);
  });

  for (std::size_t li = 0; li < live.size(); ++li) {
    auto& s = cells[live[li]];
    double sum_err = 0, sum_est = 0, sum_truth = 0;
    for (std::uint64_t t = 0; t < T; ++t) {
      const auto i = li * T + t;
      if (!errors[i].empty()) {
        if (s.status == "ok") s.status = "error:" + errors[i];
        continue;
      }
      const auto& r = recs[i];
      ++s.trials;
      s.failures += r.outcome.fail;
      sum_err += r.abs_err;
      s.max_abs_err = std::max(s.max_abs_err, r.abs_err);
      sum_est += r.outcome.estimate;
      sum_truth += r.outcome.truth;
    }
    if (s.trials) {
      const double n = static_cast<double>(s.trials);
      s.mean_abs_err = sum_err / n;
      s.mean_estimate = sum_est / n;
      s.mean_truth = sum_truth / n;
    }
  }
  if (records) *records = std::move(recs);
  return cells;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string param_or_empty(const CellParams& p, const char* key) {
  auto it = p.find(key);
  return it == p.end() ? std::string() : format_double(it->second);
}

}  // namespace

void write_csv(std::ostream& os, const ExperimentConfig& config, const std::vector<CellSummary>& cells) {
  os << kCsvHeader << '\n';
  const auto version = rng::version_string();
  for (const auto& c : cells) {
    os << csv_field(config.arch) << ',' << csv_field(config.task);
    for (const char* key : {"m", "k", "n", "d", "L", "eps", "delta"}) os << ',' << param_or_empty(c.params, key);
    os << ',' << c.trials << ',' << c.failures << ',' << format_double(c.fail_rate()) << ','
       << format_double(c.mean_abs_err) << ',' << format_double(c.max_abs_err) << ',' << config.seed << ','
       << version << ',' << csv_field(c.status) << '\n';
  }
}

nlohmann::json sidecar_json(const ExperimentConfig& config, const std::vector<CellSummary>& cells) {
  auto arr = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    arr.push_back({{"id", c.id},
                   {"params", params},
                   {"trials", c.trials},
                   {"failures", c.failures},
                   {"mean_estimate", c.mean_estimate},
                   {"mean_truth", c.mean_truth},
                   {"status", c.status}});
  }
  return {{"config", config.to_json()}, {"rng_version", rng::version_string()}, {"cells", arr}};
}

nlohmann::json CalibrationResult::to_json() const {
  return {{"m_star", m_star},
          {"m_theory", m_theory},
          {"ratio", ratio},
          {"lower_bound_hit", lower_bound_hit},
          {"within_theory", within_theory},
          {"fail_rate_at_m_star", fail_rate_at_m_star},
          {"evaluations", evaluations}};
}

CalibrationResult calibrate(std::string_view arch, std::string_view task, CellParams params, double target,
                            std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (!is_registered(arch, task)) {
    throw std::invalid_argument("unknown experiment task " + std::string(arch) + "/" + std::string(task));
  }
  if (trials < 100) throw std::invalid_argument("calibration needs at least 100 trials");
  if (!(target > 0 && target < 1)) throw std::invalid_argument("target failure rate must lie in (0, 1)");
  params.erase("m");
  const auto resolved = resolve_cell(arch, task, params);
  CalibrationResult res;
  res.m_theory = static_cast<std::uint64_t>(resolved.at("m"));
  // Pin every sized quantity except m so only m varies.
  CellParams fixed = resolved;
  fixed.erase("m");
  const std::string id = cell_id(arch, task, params);
  const double slack = 3 * std::sqrt(target * (1 - target) / static_cast<double>(trials));

  auto fail_rate = [&](std::uint64_t m) -> std::optional<double> {
    ++res.evaluations;
    CellParams p = fixed;
    p["m"] = static_cast<double>(m);
    try {
      p = resolve_cell(arch, task, p);
    } catch (const std::invalid_argument&) {
      return std::nullopt;  // m below the task's minimum
    }
    std::vector<char> fails(trials, 0);
    std::vector<std::string> errors(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
      TrialOutcome o;
      errors[t] = outcome_error(arch, task, p, trial_seed(seed, id, t), o);
      fails[t] = o.fail;
    });
    for (const auto& e : errors) {
      if (!e.empty()) throw std::runtime_error("calibration trial failed: " + e);
    }
    return static_cast<double>(std::count(fails.begin(), fails.end(), 1)) / static_cast<double>(trials);
  };
  auto passes = [&](std::uint64_t m, double* rate) {
    const auto r = fail_rate(m);
    if (r && rate) *rate = *r;
    return r && *r <= target + slack;
  };

  std::uint64_t lo = 1;
  std::uint64_t hi = 4 * res.m_theory;
  double rate_hi = 0;
  if (!passes(hi, &rate_hi)) throw std::runtime_error("calibration: failure rate above target even at 4 m_theory");
  res.m_star = hi;
  res.fail_rate_at_m_star = rate_hi;
  double rate_lo = 0;
  if (passes(lo, &rate_lo)) {
    res.m_star = lo;
    res.fail_rate_at_m_star = rate_lo;
  } else {
    // Invariant: lo fails, hi passes.
    while (hi - lo > 1) {
      const auto mid = lo + (hi - lo) / 2;
      double rate = 0;
      if (passes(mid, &rate)) {
        hi = mid;
        res.m_star = mid;
        res.fail_rate_at_m_star = rate;
      } else {
        lo = mid;
      }
    }
  }
  res.lower_bound_hit = res.m_star == 1;
  res.within_theory = res.m_star <= res.m_theory;
  res.ratio = static_cast<double>(res.m_theory) / static_cast<double>(res.m_star);
  return res;
}

}  // namespace vsacap
