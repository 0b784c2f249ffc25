// wsat: generate, solve and verify weighted d-CNF instances, and drive
// parameter-sweep experiments over the random model.
//
// Exit codes for solve/oracle: 0 = SAT, 1 = UNSAT, 2 = FAILURE (gave up),
// 3 = any error. verify exits 0 when the claimed witness checks out and 1
// when it does not.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wsat/dimacs.hpp"
#include "wsat/experiment.hpp"
#include "wsat/oracle.hpp"
#include "wsat/randgen.hpp"
#include "wsat/solver.hpp"

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitFailure = 2;
constexpr int kExitError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

wsat::Instance load_instance(const std::string& path, bool strict) {
  return wsat::parse_dimacs(read_file(path), wsat::ParseOptions{.strict = strict});
}

// CLI flag first, then the instance's own "c k=" comment.
int resolve_weight_target(const wsat::Instance& instance, std::optional<int> flag) {
  if (flag) return *flag;
  if (instance.weight_target) return *instance.weight_target;
  throw std::runtime_error(
      "no weight target: give --k or an instance with a 'c k=' comment");
}

struct GenArgs {
  int n = 0, d = 2, dprime = 1, k = 0;
  double p = -1.0, c = -1.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  const wsat::RandomModelParams params =
      args.c >= 0.0
          ? wsat::params_with_c(args.n, args.d, args.dprime, args.k, args.c, args.seed)
          : wsat::params_with_p(args.n, args.d, args.dprime, args.k, args.p, args.seed);
  std::fprintf(stderr,
               "gen: n=%d d=%d dprime=%d k=%d p=%.10g c=%.10g seed=%llu\n",
               params.n, params.d, params.dprime, params.k, params.p, params.c,
               static_cast<unsigned long long>(params.seed));
  const wsat::Instance instance = wsat::generate(params);
  const std::string text = wsat::serialize_dimacs(instance);
  if (args.out.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_file(args.out, text);
  return 0;
}

struct SolveArgs {
  std::string in;
  std::optional<int> k;
  std::optional<int> dprime;
  bool mini = false;
  double gate_mult = 1.0;
  bool fallback_oracle = false;
  std::uint64_t oracle_budget = wsat::kDefaultOracleBudget;
  bool json = false;
  bool strict = false;
};

const char* status_name(wsat::SolveStatus status) {
  switch (status) {
    case wsat::SolveStatus::SAT: return "SAT";
    case wsat::SolveStatus::UNSAT: return "UNSAT";
    case wsat::SolveStatus::FAILURE: return "FAILURE";
  }
  return "?";
}

int run_solve(const SolveArgs& args) {
  const wsat::Instance instance = load_instance(args.in, args.strict);
  const int k = resolve_weight_target(instance, args.k);
  const int dprime = args.dprime.value_or(
      instance.params ? instance.params->dprime : 1);

  wsat::SolveOptions options;
  options.gate_multiplier = args.gate_mult;

  std::fprintf(stderr, "solve: n=%d m=%d k=%d dprime=%d%s gate=%d\n",
               instance.formula.n, instance.formula.clause_count(), k, dprime,
               args.mini ? " mini" : "",
               wsat::size_gate(instance.formula.n, args.gate_mult));

  wsat::SolveOutcome outcome;
  if (args.mini) {
    if (dprime != 1)
      throw std::runtime_error("--mini applies to the base model (dprime = 1)");
    outcome = wsat::mini_wsat_solve(instance.formula, k, options);
  } else if (dprime > 1) {
    outcome = wsat::wsat_solve_dprime(instance.formula, k, dprime, options);
  } else {
    outcome = wsat::wsat_solve(instance.formula, k, options);
  }

  bool fallback_used = false;
  if (outcome.status == wsat::SolveStatus::FAILURE && args.fallback_oracle) {
    const wsat::OracleResult truth = wsat::oracle_solve(
        instance.formula, outcome.effective_target, args.oracle_budget);
    fallback_used = true;
    if (truth.status == wsat::OracleResult::Status::SAT) {
      outcome.status = wsat::SolveStatus::SAT;
      outcome.witness = truth.witness;
    } else {
      outcome.status = wsat::SolveStatus::UNSAT;
    }
  }

  if (args.json) {
    nlohmann::json out;
    out["status"] = status_name(outcome.status);
    out["k"] = outcome.effective_target;
    if (outcome.witness) out["witness"] = outcome.witness->true_vars();
    out["diagnostics"] = {
        {"frozen", outcome.stats.frozen},
        {"components", outcome.stats.components},
        {"isolated", outcome.stats.isolated},
        {"max_component", outcome.stats.max_component},
        {"branches", outcome.stats.branches},
        {"gated_branches", outcome.stats.gated_branches},
        {"fallback_oracle_used", fallback_used},
        {"timings_ms",
         {{"freeze", outcome.stats.ms_freeze},
          {"reduce", outcome.stats.ms_reduce},
          {"decompose", outcome.stats.ms_decompose},
          {"weight_sets", outcome.stats.ms_weight_sets},
          {"dp", outcome.stats.ms_dp},
          {"total", outcome.stats.ms_total}}},
    };
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("s %s\n", status_name(outcome.status));
    if (outcome.witness) {
      std::printf("v");
      for (int v : outcome.witness->true_vars()) std::printf(" %d", v);
      std::printf("\n");
    }
  }

  switch (outcome.status) {
    case wsat::SolveStatus::SAT: return kExitSat;
    case wsat::SolveStatus::UNSAT: return kExitUnsat;
    case wsat::SolveStatus::FAILURE: return kExitFailure;
  }
  return kExitError;
}

struct OracleArgs {
  std::string in;
  std::optional<int> k;
  std::uint64_t budget = wsat::kDefaultOracleBudget;
};

int run_oracle(const OracleArgs& args) {
  const wsat::Instance instance = load_instance(args.in, false);
  const int k = resolve_weight_target(instance, args.k);
  std::fprintf(stderr, "oracle: n=%d m=%d k=%d budget=%llu\n", instance.formula.n,
               instance.formula.clause_count(), k,
               static_cast<unsigned long long>(args.budget));
  const wsat::OracleResult result =
      wsat::oracle_solve(instance.formula, k, args.budget);
  if (result.status == wsat::OracleResult::Status::SAT) {
    std::printf("s SAT\n");
    std::printf("v");
    for (int v : result.witness->true_vars()) std::printf(" %d", v);
    std::printf("\n");
    return kExitSat;
  }
  std::printf("s UNSAT\n");
  return kExitUnsat;
}

int run_experiment_cmd(wsat::ExperimentConfig config) {
  if (config.ds.empty()) config.ds = {2};
  if (config.dprimes.empty()) config.dprimes = {1};
  if (config.out_path.empty())
    throw std::runtime_error("experiment needs --out (or out= in the config)");

  wsat::validate_config(config);

  std::fprintf(stderr, "experiment: variant=%s trials=%d seed=%llu jobs=%d%s%s\n",
               wsat::to_string(config.variant), config.trials,
               static_cast<unsigned long long>(config.master_seed),
               config.jobs, config.fallback_oracle ? " fallback-oracle" : "",
               config.measure_time ? "" : " no-timing");
  for (int n : config.ns)
    for (int d : config.ds)
      for (int dp : config.dprimes)
        for (int k : config.ks) {
          if (!config.cs.empty()) {
            for (double c : config.cs)
              std::fprintf(stderr,
                           "  cell n=%d d=%d dprime=%d k=%d c=%.6g p=%.6g\n", n,
                           d, dp, k, c,
                           wsat::probability_from_coefficient(c, n, d, dp));
          } else {
            for (double p : config.ps)
              std::fprintf(stderr,
                           "  cell n=%d d=%d dprime=%d k=%d c=%.6g p=%.6g\n", n,
                           d, dp, k,
                           wsat::coefficient_from_probability(p, n, d, dp), p);
          }
        }

  const auto results = wsat::run_experiment(config);
  wsat::emit_csv(results, config.out_path);
  std::fprintf(stderr, "experiment: wrote %zu cells to %s\n", results.size(),
               config.out_path.c_str());
  return 0;
}

struct VerifyArgs {
  std::string in;
  std::string assignment_path;
  std::optional<int> k;
};

// Witness file: whitespace-separated indices of the TRUE variables; lines
// starting with 'c' are comments; a trailing 0 is tolerated.
wsat::Assignment read_assignment(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  wsat::Assignment assignment = wsat::Assignment::all_false(n);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == 'c') continue;
    std::istringstream body(line);
    long long var;
    while (body >> var) {
      if (var == 0) continue;
      if (var < 1 || var > n)
        throw std::runtime_error("witness variable " + std::to_string(var) +
                                 " out of range [1, " + std::to_string(n) + "]");
      assignment.set(static_cast<int>(var), true);
    }
    if (!body.eof())
      throw std::runtime_error("witness file contains a non-integer token");
  }
  return assignment;
}

int run_verify(const VerifyArgs& args) {
  const wsat::Instance instance = load_instance(args.in, false);
  const int k = resolve_weight_target(instance, args.k);
  const wsat::Assignment assignment =
      read_assignment(args.assignment_path, instance.formula.n);
  std::fprintf(stderr, "verify: n=%d m=%d k=%d claimed-weight=%d\n",
               instance.formula.n, instance.formula.clause_count(), k,
               assignment.weight());
  const bool good = wsat::verify_assignment(instance.formula, assignment, k);
  std::printf(good ? "VERIFIED\n" : "NOT-VERIFIED\n");
  return good ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted d-CNF satisfiability at an exact weight target"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--n", gen.n, "variable count")->required();
  gen_cmd->add_option("--d", gen.d, "clause arity")->default_val(2);
  gen_cmd->add_option("--dprime", gen.dprime, "minimum negated literals")
      ->default_val(1);
  gen_cmd->add_option("--k", gen.k, "weight target to record")->required();
  auto* popt = gen_cmd->add_option("--p", gen.p, "edge probability");
  auto* copt = gen_cmd->add_option("--c", gen.c, "threshold coefficient");
  popt->excludes(copt);
  copt->excludes(popt);
  gen_cmd->add_option("--seed", gen.seed, "generator seed")->required();
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "run the solver pipeline");
  solve_cmd->add_option("--in", solve.in, "instance file")->required();
  int solve_k = -1, solve_dprime = -1;
  solve_cmd->add_option("--k", solve_k, "weight target (overrides the file)");
  solve_cmd->add_option("--dprime", solve_dprime,
                        "use the dprime pipeline (default: from the file)");
  solve_cmd->add_flag("--mini", solve.mini, "solve at target round(k ln n)");
  solve_cmd->add_option("--gate-mult", solve.gate_mult,
                        "size gate multiplier")->default_val(1.0);
  solve_cmd->add_flag("--fallback-oracle", solve.fallback_oracle,
                      "resolve FAILURE by exhaustive enumeration");
  solve_cmd->add_option("--oracle-budget", solve.oracle_budget,
                        "fallback enumeration budget");
  solve_cmd->add_flag("--json", solve.json, "JSON output");
  solve_cmd->add_flag("--strict", solve.strict, "strict arity validation");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive ground truth");
  oracle_cmd->add_option("--in", oracle.in, "instance file")->required();
  int oracle_k = -1;
  oracle_cmd->add_option("--k", oracle_k, "weight target (overrides the file)");
  oracle_cmd->add_option("--budget", oracle.budget, "enumeration budget");

  std::string exp_config_path;
  wsat::ExperimentConfig exp_flags;
  bool exp_no_timing = false;
  auto* exp_cmd = app.add_subcommand("experiment", "sweep a parameter grid");
  exp_cmd->add_option("--config", exp_config_path, "flat TOML config file");
  exp_cmd->add_option("--n", exp_flags.ns, "variable counts")->delimiter(',');
  exp_cmd->add_option("--d", exp_flags.ds, "clause arities")->delimiter(',');
  exp_cmd->add_option("--dprime", exp_flags.dprimes, "minimum negated literals")
      ->delimiter(',');
  exp_cmd->add_option("--k", exp_flags.ks, "weight targets")->delimiter(',');
  exp_cmd->add_option("--c", exp_flags.cs, "threshold coefficients")
      ->delimiter(',');
  exp_cmd->add_option("--p", exp_flags.ps, "edge probabilities")->delimiter(',');
  exp_cmd->add_option("--trials", exp_flags.trials, "trials per cell");
  exp_cmd->add_option("--seed", exp_flags.master_seed, "master seed");
  std::string variant_name = "wsat";
  exp_cmd->add_option("--variant", variant_name, "wsat | dprime | mini");
  exp_cmd->add_flag("--fallback-oracle", exp_flags.fallback_oracle,
                    "resolve failures by enumeration where affordable");
  exp_cmd->add_option("--oracle-budget", exp_flags.oracle_budget,
                      "fallback enumeration budget");
  exp_cmd->add_option("--gate-mult", exp_flags.gate_multiplier,
                      "size gate multiplier");
  exp_cmd->add_option("--jobs", exp_flags.jobs, "worker threads per cell");
  exp_cmd->add_flag("--no-timing", exp_no_timing,
                    "zero the timing columns for byte-stable output");
  exp_cmd->add_option("--out", exp_flags.out_path, "CSV output path");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check a claimed witness");
  verify_cmd->add_option("--in", verify.in, "instance file")->required();
  verify_cmd->add_option("--assignment", verify.assignment_path,
                         "file listing the TRUE variables")->required();
  int verify_k = -1;
  verify_cmd->add_option("--k", verify_k, "weight target (overrides the file)");

  exp_flags.ds.clear();
  exp_flags.dprimes.clear();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) {
      if (solve_cmd->count("--k")) solve.k = solve_k;
      if (solve_cmd->count("--dprime")) solve.dprime = solve_dprime;
      return run_solve(solve);
    }
    if (oracle_cmd->parsed()) {
      if (oracle_cmd->count("--k")) oracle.k = oracle_k;
      return run_oracle(oracle);
    }
    if (exp_cmd->parsed()) {
      wsat::ExperimentConfig config;
      if (!exp_config_path.empty())
        config = wsat::parse_experiment_config_toml(read_file(exp_config_path));
      // explicit flags win over the config file
      if (exp_cmd->count("--n")) config.ns = exp_flags.ns;
      if (exp_cmd->count("--d")) config.ds = exp_flags.ds;
      if (exp_cmd->count("--dprime")) config.dprimes = exp_flags.dprimes;
      if (exp_cmd->count("--k")) config.ks = exp_flags.ks;
      if (exp_cmd->count("--c")) config.cs = exp_flags.cs;
      if (exp_cmd->count("--p")) config.ps = exp_flags.ps;
      if (exp_cmd->count("--trials")) config.trials = exp_flags.trials;
      if (exp_cmd->count("--seed")) config.master_seed = exp_flags.master_seed;
      if (exp_cmd->count("--variant"))
        config.variant = wsat::variant_from_string(variant_name);
      if (exp_cmd->count("--fallback-oracle"))
        config.fallback_oracle = exp_flags.fallback_oracle;
      if (exp_cmd->count("--oracle-budget"))
        config.oracle_budget = exp_flags.oracle_budget;
      if (exp_cmd->count("--gate-mult"))
        config.gate_multiplier = exp_flags.gate_multiplier;
      if (exp_cmd->count("--jobs")) config.jobs = exp_flags.jobs;
      if (exp_no_timing) config.measure_time = false;
      if (exp_cmd->count("--out")) config.out_path = exp_flags.out_path;
      return run_experiment_cmd(std::move(config));
    }
    if (verify_cmd->parsed()) {
      if (verify_cmd->count("--k")) verify.k = verify_k;
      return run_verify(verify);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wsat: error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
