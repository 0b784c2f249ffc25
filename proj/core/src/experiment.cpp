#include "wsat/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "wsat/oracle.hpp"
#include "wsat/randgen.hpp"
#include "wsat/rng.hpp"

namespace wsat {

namespace {

struct TrialRecord {
  SolveStatus status = SolveStatus::FAILURE;
  bool fallback_sat = false;
  bool fallback_resolved = false;
  double ms = 0.0;
  double frozen_frac = 0.0;
  int max_component = 0;
};

std::uint64_t cell_seed(const ExperimentConfig& config,
                        const RandomModelParams& cell, int trial) {
  // Chain the master seed with the cell's identity and the trial index so the
  // stream for any (cell, trial) is independent of grid layout and execution
  // order.
  std::uint64_t h = config.master_seed;
  h = mix_seed(h, static_cast<std::uint64_t>(cell.n));
  h = mix_seed(h, static_cast<std::uint64_t>(cell.d));
  h = mix_seed(h, static_cast<std::uint64_t>(cell.dprime));
  h = mix_seed(h, static_cast<std::uint64_t>(cell.k));
  h = mix_seed(h, std::bit_cast<std::uint64_t>(cell.p));
  h = mix_seed(h, static_cast<std::uint64_t>(trial));
  return h;
}

TrialRecord run_trial(const ExperimentConfig& config,
                      const RandomModelParams& cell, int trial) {
  RandomModelParams params = cell;
  params.seed = cell_seed(config, cell, trial);
  const Instance instance = generate(params);

  SolveOptions options;
  options.gate_multiplier = config.gate_multiplier;

  SolveOutcome outcome;
  switch (config.variant) {
    case SolverVariant::Wsat:
      outcome = wsat_solve(instance.formula, params.k, options);
      break;
    case SolverVariant::Dprime:
      outcome = wsat_solve_dprime(instance.formula, params.k, params.dprime, options);
      break;
    case SolverVariant::Mini:
      outcome = mini_wsat_solve(instance.formula, params.k, options);
      break;
  }

  TrialRecord record;
  record.status = outcome.status;
  record.ms = config.measure_time ? outcome.stats.ms_total : 0.0;
  record.frozen_frac =
      params.n > 0 ? static_cast<double>(outcome.stats.frozen) / params.n : 0.0;
  record.max_component = outcome.stats.max_component;

  if (outcome.status == SolveStatus::FAILURE && config.fallback_oracle) {
    try {
      const OracleResult truth =
          oracle_solve(instance.formula, outcome.effective_target, config.oracle_budget);
      record.fallback_resolved = true;
      record.fallback_sat = truth.status == OracleResult::Status::SAT;
    } catch (const BudgetError&) {
      // out of desk range: the failure stays unresolved
    }
  }
  return record;
}

CellResult aggregate(const ExperimentConfig& config, const RandomModelParams& cell,
                     std::vector<TrialRecord>& records) {
  CellResult result;
  result.params = cell;
  result.trials = static_cast<int>(records.size());
  result.master_seed = config.master_seed;

  std::vector<double> times;
  times.reserve(records.size());
  double frozen_sum = 0.0, comp_sum = 0.0, ms_sum = 0.0;
  for (const TrialRecord& r : records) {
    switch (r.status) {
      case SolveStatus::SAT: ++result.n_sat; break;
      case SolveStatus::UNSAT: ++result.n_unsat; break;
      case SolveStatus::FAILURE:
        ++result.n_fail;
        if (r.fallback_resolved) (r.fallback_sat ? result.n_fail_sat : result.n_fail_unsat)++;
        break;
    }
    times.push_back(r.ms);
    ms_sum += r.ms;
    frozen_sum += r.frozen_frac;
    comp_sum += r.max_component;
  }
  if (!records.empty()) {
    result.mean_ms = ms_sum / records.size();
    std::sort(times.begin(), times.end());
    const size_t mid = times.size() / 2;
    result.median_ms = times.size() % 2 ? times[mid]
                                        : 0.5 * (times[mid - 1] + times[mid]);
    result.mean_frozen_frac = frozen_sum / records.size();
    result.mean_max_comp = comp_sum / records.size();
  }
  return result;
}

std::string format_sig6(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

} // namespace

const char* to_string(SolverVariant variant) {
  switch (variant) {
    case SolverVariant::Wsat: return "wsat";
    case SolverVariant::Dprime: return "dprime";
    case SolverVariant::Mini: return "mini";
  }
  return "?";
}

SolverVariant variant_from_string(const std::string& name) {
  if (name == "wsat") return SolverVariant::Wsat;
  if (name == "dprime") return SolverVariant::Dprime;
  if (name == "mini") return SolverVariant::Mini;
  throw std::invalid_argument("unknown solver variant '" + name +
                              "' (expected wsat, dprime or mini)");
}

void validate_config(const ExperimentConfig& config) {
  if (config.ns.empty() || config.ds.empty() || config.dprimes.empty() ||
      config.ks.empty())
    throw std::invalid_argument("experiment grid needs n, d, dprime and k values");
  if (config.cs.empty() == config.ps.empty())
    throw std::invalid_argument("give exactly one of the c list and the p list");
  if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (config.jobs < 0) throw std::invalid_argument("jobs must be nonnegative");
  for (int n : config.ns)
    for (int d : config.ds)
      for (int dp : config.dprimes)
        for (int k : config.ks) {
          validate_model_shape(n, d, dp, k);
          for (double c : config.cs) probability_from_coefficient(c, n, d, dp);
          for (double p : config.ps)
            if (!(p >= 0.0 && p <= 1.0))
              throw std::invalid_argument("edge probability outside [0, 1]");
        }
}

std::vector<CellResult> run_experiment(const ExperimentConfig& config) {
  validate_config(config);

  std::vector<RandomModelParams> cells;
  for (int n : config.ns)
    for (int d : config.ds)
      for (int dp : config.dprimes)
        for (int k : config.ks) {
          if (!config.cs.empty()) {
            for (double c : config.cs) cells.push_back(params_with_c(n, d, dp, k, c, 0));
          } else {
            for (double p : config.ps) cells.push_back(params_with_p(n, d, dp, k, p, 0));
          }
        }

  const int jobs = std::max(config.jobs, 1);
  std::vector<CellResult> results;
  results.reserve(cells.size());
  for (const RandomModelParams& cell : cells) {
    std::vector<TrialRecord> records(static_cast<size_t>(config.trials));
    if (jobs == 1) {
      for (int t = 0; t < config.trials; ++t) records[t] = run_trial(config, cell, t);
    } else {
      std::atomic<int> next{0};
      auto worker = [&] {
        for (;;) {
          const int t = next.fetch_add(1);
          if (t >= config.trials) return;
          records[t] = run_trial(config, cell, t);
        }
      };
      std::vector<std::thread> pool;
      for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
      for (auto& thread : pool) thread.join();
    }
    // records are indexed by trial, so aggregation order is fixed
    results.push_back(aggregate(config, cell, records));
  }
  return results;
}

std::string format_csv(const std::vector<CellResult>& results) {
  std::string out =
      "n,d,dprime,k,c,p,trials,master_seed,n_sat,n_unsat,n_fail,n_fail_sat,"
      "n_fail_unsat,mean_ms,median_ms,mean_frozen_frac,mean_max_comp\n";
  for (const CellResult& r : results) {
    out += std::to_string(r.params.n) + ',' + std::to_string(r.params.d) + ',' +
           std::to_string(r.params.dprime) + ',' + std::to_string(r.params.k) + ',';
    out += format_sig6(r.params.c) + ',' + format_sig6(r.params.p) + ',';
    out += std::to_string(r.trials) + ',' + std::to_string(r.master_seed) + ',';
    out += std::to_string(r.n_sat) + ',' + std::to_string(r.n_unsat) + ',' +
           std::to_string(r.n_fail) + ',' + std::to_string(r.n_fail_sat) + ',' +
           std::to_string(r.n_fail_unsat) + ',';
    out += format_sig6(r.mean_ms) + ',' + format_sig6(r.median_ms) + ',' +
           format_sig6(r.mean_frozen_frac) + ',' + format_sig6(r.mean_max_comp);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<CellResult>& results, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << format_csv(results);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view body, int line_no) {
  std::vector<std::string> items;
  std::string current;
  for (char ch : body) {
    if (ch == ',') {
      items.emplace_back(trim_view(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  const std::string_view last = trim_view(current);
  if (!last.empty()) items.emplace_back(last);
  if (items.empty())
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": empty array");
  return items;
}

double to_double(const std::string& token, int line_no) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size())
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": expected a number, got '" + token + "'");
  return value;
}

int to_int(const std::string& token, int line_no) {
  const double value = to_double(token, line_no);
  const int as_int = static_cast<int>(value);
  if (static_cast<double>(as_int) != value)
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": expected an integer, got '" + token + "'");
  return as_int;
}

std::uint64_t to_uint64(const std::string& token, int line_no) {
  std::uint64_t value = 0;
  const char* end = token.c_str() + token.size();
  const auto [ptr, ec] = std::from_chars(token.c_str(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end)
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": expected an unsigned integer, got '" + token +
                                "'");
  return value;
}

} // namespace

ExperimentConfig parse_experiment_config_toml(std::string_view text) {
  ExperimentConfig config;
  config.ds.clear();
  config.dprimes.clear();

  size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    // strip a trailing comment (quotes in values hold no '#' in this format)
    if (const size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim_view(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key{trim_view(line.substr(0, eq))};
    std::string_view value = trim_view(line.substr(eq + 1));
    if (value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": missing value for '" + key + "'");

    auto as_int_list = [&]() {
      std::vector<int> out;
      if (value.front() == '[') {
        if (value.back() != ']')
          throw std::invalid_argument("config line " + std::to_string(line_no) +
                                      ": unterminated array");
        for (const auto& item : split_list(value.substr(1, value.size() - 2), line_no))
          out.push_back(to_int(item, line_no));
      } else {
        out.push_back(to_int(std::string(value), line_no));
      }
      return out;
    };
    auto as_double_list = [&]() {
      std::vector<double> out;
      if (value.front() == '[') {
        if (value.back() != ']')
          throw std::invalid_argument("config line " + std::to_string(line_no) +
                                      ": unterminated array");
        for (const auto& item : split_list(value.substr(1, value.size() - 2), line_no))
          out.push_back(to_double(item, line_no));
      } else {
        out.push_back(to_double(std::string(value), line_no));
      }
      return out;
    };
    auto as_string = [&]() {
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        return std::string(value.substr(1, value.size() - 2));
      return std::string(value);
    };
    auto as_bool = [&]() {
      if (value == "true") return true;
      if (value == "false") return false;
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected true or false for '" + key + "'");
    };

    if (key == "n") config.ns = as_int_list();
    else if (key == "d") config.ds = as_int_list();
    else if (key == "dprime") config.dprimes = as_int_list();
    else if (key == "k") config.ks = as_int_list();
    else if (key == "c") config.cs = as_double_list();
    else if (key == "p") config.ps = as_double_list();
    else if (key == "trials") config.trials = to_int(std::string(value), line_no);
    else if (key == "seed") config.master_seed = to_uint64(std::string(value), line_no);
    else if (key == "variant") config.variant = variant_from_string(as_string());
    else if (key == "fallback_oracle") config.fallback_oracle = as_bool();
    else if (key == "oracle_budget")
      config.oracle_budget = to_uint64(std::string(value), line_no);
    else if (key == "gate_mult")
      config.gate_multiplier = to_double(std::string(value), line_no);
    else if (key == "jobs") config.jobs = to_int(std::string(value), line_no);
    else if (key == "timing") config.measure_time = as_bool();
    else if (key == "out") config.out_path = as_string();
    else
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
  }

  if (config.ds.empty()) config.ds = {2};
  if (config.dprimes.empty()) config.dprimes = {1};
  return config;
}

} // namespace wsat
