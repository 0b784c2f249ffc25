#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsat/solver.hpp"

namespace wsat {

enum class SolverVariant { Wsat, Dprime, Mini };

const char* to_string(SolverVariant variant);
SolverVariant variant_from_string(const std::string& name);

/// A grid of model cells to sweep. The grid is the Cartesian product of the
/// parameter lists in the order (n, d, dprime, k, c-or-p); exactly one of
/// `cs` and `ps` must be non-empty. Per-trial seeds are derived by hashing
/// the master seed with the cell parameters and the trial index, so results
/// do not depend on execution order or on which cells run.
struct ExperimentConfig {
  std::vector<int> ns;
  std::vector<int> ds{2};
  std::vector<int> dprimes{1};
  std::vector<int> ks;
  std::vector<double> cs;
  std::vector<double> ps;
  int trials = 1;
  std::uint64_t master_seed = 0;
  SolverVariant variant = SolverVariant::Wsat;
  bool fallback_oracle = false;
  std::uint64_t oracle_budget = 10'000'000;
  double gate_multiplier = 1.0;
  int jobs = 1;
  /// Wall-clock timing is the one nondeterministic quantity in the output;
  /// disable it to make the CSV byte-stable across runs (the timing columns
  /// are then written as 0).
  bool measure_time = true;
  std::string out_path;
};

struct CellResult {
  RandomModelParams params; // seed field unused; k is the cell's target
  int trials = 0;
  std::uint64_t master_seed = 0;
  int n_sat = 0;
  int n_unsat = 0;
  int n_fail = 0;
  int n_fail_sat = 0;   // failures resolved SAT by the fallback oracle
  int n_fail_unsat = 0; // failures resolved UNSAT by the fallback oracle
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double mean_frozen_frac = 0.0;
  double mean_max_comp = 0.0;
};

/// Runs the grid. Trials inside a cell may run on `jobs` threads; trial
/// records are committed in trial-index order, so everything except the
/// timing aggregates is identical for any job count.
std::vector<CellResult> run_experiment(const ExperimentConfig& config);

/// CSV with the fixed 17-column header
/// n,d,dprime,k,c,p,trials,master_seed,n_sat,n_unsat,n_fail,n_fail_sat,
/// n_fail_unsat,mean_ms,median_ms,mean_frozen_frac,mean_max_comp
/// in grid order, floats with 6 significant digits.
std::string format_csv(const std::vector<CellResult>& results);
void emit_csv(const std::vector<CellResult>& results, const std::string& path);

/// Minimal flat-TOML reader for experiment configs: `key = value` lines with
/// integer, float, boolean, quoted-string and numeric-array values, plus #
/// comments. Keys: n, d, dprime, k, c, p, trials, seed, variant,
/// fallback_oracle, oracle_budget, gate_mult, jobs, timing, out.
ExperimentConfig parse_experiment_config_toml(std::string_view text);

/// Validates list shapes and value ranges; throws std::invalid_argument.
void validate_config(const ExperimentConfig& config);

} // namespace wsat
