#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "moobfgs/benchmark.hpp"
#include "moobfgs/suite.hpp"

using namespace moobfgs;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitMaxIters = 2;
constexpr int kExitNumerical = 3;

std::uint64_t seed_or_env(const std::optional<std::uint64_t>& flag) {
  if (flag.has_value()) return *flag;
  if (const char* env = std::getenv("MOO_BFGS_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 1;
}

struct ConfigFlags {
  std::optional<double> rho, sigma, vartheta, epsilon, tol, alpha_max;
  std::optional<int> max_iters, ls_trials;
  std::optional<std::string> r_choice;
  bool warm_start = false;
  std::string config_file;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--rho", f.rho, "Sufficient-decrease coefficient, in (0, 1/2)");
  cmd->add_option("--sigma", f.sigma, "Curvature coefficient, in (rho, 1)");
  cmd->add_option("--vartheta", f.vartheta, "Correction coefficient");
  cmd->add_option("--epsilon", f.epsilon, "Cautious update threshold coefficient");
  cmd->add_option("--tol", f.tol, "Criticality tolerance on |theta|");
  cmd->add_option("--max-iters", f.max_iters, "Iteration limit");
  cmd->add_option("--alpha-max", f.alpha_max, "Largest step size tried");
  cmd->add_option("--ls-trials", f.ls_trials, "Line-search trial limit");
  cmd->add_option("--r-choice", f.r_choice, "Correction multipliers: choice1 or choice2")
      ->check(CLI::IsMember({"choice1", "choice2"}));
  cmd->add_flag("--warm-start", f.warm_start, "Warm-start subproblem multipliers");
  cmd->add_option("--config", f.config_file, "JSON config file (defaults < file < flags)");
}

// Precedence: built-in defaults, then config file, then explicit flags.
SolverConfig resolve_config(const ConfigFlags& f) {
  SolverConfig cfg;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw std::invalid_argument("cannot open config file: " + f.config_file);
    json j;
    in >> j;
    if (j.contains("rho")) cfg.rho = j["rho"].get<double>();
    if (j.contains("sigma")) cfg.sigma = j["sigma"].get<double>();
    if (j.contains("vartheta")) cfg.vartheta = j["vartheta"].get<double>();
    if (j.contains("epsilon_cautious")) cfg.epsilon_cautious = j["epsilon_cautious"].get<double>();
    if (j.contains("theta_tol")) cfg.theta_tol = j["theta_tol"].get<double>();
    if (j.contains("max_iters")) cfg.max_iters = j["max_iters"].get<int>();
    if (j.contains("alpha_max")) cfg.alpha_max = j["alpha_max"].get<double>();
    if (j.contains("ls_max_trials")) cfg.ls_max_trials = j["ls_max_trials"].get<int>();
    if (j.contains("r_choice"))
      cfg.r_choice = j["r_choice"].get<std::string>() == "choice1" ? RChoice::Choice1
                                                                   : RChoice::Choice2;
    if (j.contains("warm_start_lambda")) cfg.warm_start_lambda = j["warm_start_lambda"].get<bool>();
  }
  if (f.rho) cfg.rho = *f.rho;
  if (f.sigma) cfg.sigma = *f.sigma;
  if (f.vartheta) cfg.vartheta = *f.vartheta;
  if (f.epsilon) cfg.epsilon_cautious = *f.epsilon;
  if (f.tol) cfg.theta_tol = *f.tol;
  if (f.max_iters) cfg.max_iters = *f.max_iters;
  if (f.alpha_max) cfg.alpha_max = *f.alpha_max;
  if (f.ls_trials) cfg.ls_max_trials = *f.ls_trials;
  if (f.r_choice) cfg.r_choice = *f.r_choice == "choice1" ? RChoice::Choice1 : RChoice::Choice2;
  if (f.warm_start) cfg.warm_start_lambda = true;
  validate(cfg);
  return cfg;
}

int cmd_list_problems(const std::string& format) {
  if (format == "json") {
    std::cout << problem_listing_json() << '\n';
    return kExitOk;
  }
  std::printf("%-10s %4s %4s %-7s %s\n", "name", "n", "m", "convex", "start box");
  for (const auto& p : problem_suite()) {
    std::string box;
    for (int i = 0; i < p.n; ++i) {
      if (i > 0) box += " x ";
      box += "[" + fmt_g17(p.lower(i)) + "," + fmt_g17(p.upper(i)) + "]";
    }
    std::printf("%-10s %4d %4d %-7s %s\n", p.name.c_str(), p.n, p.m, p.convex ? "yes" : "no",
                box.c_str());
  }
  return kExitOk;
}

int cmd_solve(const std::string& problem_name, const std::string& solver_name,
              const std::optional<std::uint64_t>& seed_flag, const std::string& x0_text,
              const ConfigFlags& flags, const std::string& trace_file) {
  const Problem* problem = find_problem(problem_name);
  if (problem == nullptr) {
    std::cerr << "unknown problem: " << problem_name << '\n';
    return kExitConfig;
  }
  SolverConfig cfg = resolve_config(flags);
  if (!variant_from_string(solver_name, cfg.variant)) {
    std::cerr << "unknown solver: " << solver_name << '\n';
    return kExitConfig;
  }
  if (!trace_file.empty()) cfg.trace = TraceLevel::Full;

  Vector x0;
  if (!x0_text.empty()) {
    std::vector<double> vals;
    std::string tok;
    std::istringstream is(x0_text);
    while (std::getline(is, tok, ',')) vals.push_back(std::strtod(tok.c_str(), nullptr));
    if (static_cast<int>(vals.size()) != problem->n) {
      std::cerr << "--x0 must have " << problem->n << " components\n";
      return kExitConfig;
    }
    x0.resize(problem->n);
    for (int i = 0; i < problem->n; ++i) x0(i) = vals[static_cast<size_t>(i)];
  } else {
    x0 = random_start(*problem, seed_or_env(seed_flag));
  }

  const RunResult result = run(*problem, x0, cfg);
  std::cout << run_result_to_json(result, /*include_trace=*/false) << '\n';

  if (!trace_file.empty()) {
    std::ofstream out(trace_file, std::ios::binary);
    for (const auto& rec : result.trace) {
      json t;
      t["k"] = rec.k;
      t["theta"] = rec.theta;
      t["d_norm"] = rec.d_norm;
      t["alpha"] = rec.alpha;
      t["unit_step"] = rec.unit_step;
      t["f_evals"] = rec.f_evals;
      t["jf_evals"] = rec.jf_evals;
      if (rec.x.size() > 0)
        t["x"] = std::vector<double>(rec.x.data(), rec.x.data() + rec.x.size());
      if (rec.F.size() > 0)
        t["F"] = std::vector<double>(rec.F.data(), rec.F.data() + rec.F.size());
      if (rec.d_sd_norm >= 0.0) t["d_sd_norm"] = rec.d_sd_norm;
      out << t.dump() << '\n';
    }
  }

  switch (result.status) {
    case RunStatus::Converged: return kExitOk;
    case RunStatus::MaxIters: return kExitMaxIters;
    default: return kExitNumerical;
  }
}

std::vector<std::string> resolve_problem_names(const std::string& csv) {
  std::vector<std::string> names;
  if (csv == "all") {
    for (const auto& p : problem_suite()) names.push_back(p.name);
    return names;
  }
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) names.push_back(tok);
  }
  return names;
}

std::vector<std::string> resolve_solver_names(const std::string& csv) {
  if (csv == "all") return {"global-bfgs", "bfgs-wolfe", "cautious-bfgs-armijo"};
  std::vector<std::string> names;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) names.push_back(tok);
  }
  return names;
}

int cmd_benchmark(const std::string& problems, const std::string& solvers, int starts,
                  const std::optional<std::uint64_t>& seed_flag, const std::string& outdir,
                  int jobs, const ConfigFlags& flags, const std::string& from_manifest) {
  ExperimentSpec spec;
  if (!from_manifest.empty()) {
    spec = read_manifest(from_manifest);
  } else {
    spec.problems = resolve_problem_names(problems);
    spec.solvers = resolve_solver_names(solvers);
    spec.n_starts = starts;
    spec.seed = seed_or_env(seed_flag);
    spec.config = resolve_config(flags);
  }
  spec.outdir = outdir;
  spec.jobs = jobs;

  const ResultsBundle bundle = run_benchmark(spec);
  long converged = 0;
  for (const auto& r : bundle.runs) {
    if (r.status == RunStatus::Converged) ++converged;
  }
  std::cout << "runs: " << bundle.runs.size() << ", converged: " << converged << ", outdir: "
            << spec.outdir << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiobjective quasi-Newton solvers and benchmark harness"};
  app.require_subcommand(1);

  // list-problems
  auto* list_cmd = app.add_subcommand("list-problems", "List the registered test problems");
  std::string format = "table";
  list_cmd->add_option("--format", format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Run one solver on one problem");
  std::string problem_name, solver_name = "global-bfgs", x0_text, trace_file;
  std::optional<std::uint64_t> seed_flag;
  ConfigFlags solve_flags;
  solve_cmd->add_option("--problem", problem_name, "Problem name")->required();
  solve_cmd->add_option("--solver", solver_name,
                        "global-bfgs, bfgs-wolfe, or cautious-bfgs-armijo");
  solve_cmd->add_option("--seed", seed_flag, "Seed for the random start");
  solve_cmd->add_option("--x0", x0_text, "Comma-separated start point (overrides --seed)");
  solve_cmd->add_option("--trace", trace_file, "Write per-iteration JSON lines to this file");
  add_config_flags(solve_cmd, solve_flags);

  // benchmark
  auto* bench_cmd = app.add_subcommand("benchmark", "Run the multi-start sweep");
  std::string problems = "all", solvers = "all", outdir = "benchmark-out", from_manifest;
  int starts = 10, jobs = 1;
  std::optional<std::uint64_t> bench_seed;
  ConfigFlags bench_flags;
  bench_cmd->add_option("--problems", problems, "Comma-separated names or 'all'");
  bench_cmd->add_option("--solvers", solvers, "Comma-separated names or 'all'");
  bench_cmd->add_option("--starts", starts, "Starts per (problem, solver)");
  bench_cmd->add_option("--seed", bench_seed, "Base seed");
  bench_cmd->add_option("--out", outdir, "Output directory");
  bench_cmd->add_option("--jobs", jobs, "Worker threads per multi-start");
  bench_cmd->add_option("--from-manifest", from_manifest, "Re-run a stored manifest");
  add_config_flags(bench_cmd, bench_flags);

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Recompute metrics from stored results");
  std::string metrics_dir;
  metrics_cmd->add_option("--out", metrics_dir, "Benchmark output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) return cmd_list_problems(format);
    if (solve_cmd->parsed()) {
      return cmd_solve(problem_name, solver_name, seed_flag, x0_text, solve_flags, trace_file);
    }
    if (bench_cmd->parsed()) {
      return cmd_benchmark(problems, solvers, starts, bench_seed, outdir, jobs, bench_flags,
                           from_manifest);
    }
    if (metrics_cmd->parsed()) {
      recompute_metrics(metrics_dir);
      std::cout << "metrics recomputed under " << metrics_dir << '\n';
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
