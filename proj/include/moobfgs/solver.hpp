#pragma once

#include <string>
#include <vector>

#include "moobfgs/linesearch.hpp"
#include "moobfgs/problem.hpp"
#include "moobfgs/subproblem.hpp"
#include "moobfgs/updates.hpp"

namespace moobfgs {

enum class Variant { GlobalBFGS, BFGSWolfe, CautiousBFGSArmijo };
enum class RChoice { Choice1, Choice2 };
enum class TraceLevel { None, Basic, Full };

std::string to_string(Variant v);
bool variant_from_string(const std::string& s, Variant& out);

struct SolverConfig {
  Variant variant = Variant::GlobalBFGS;
  double rho = 1e-4;
  double sigma = 0.1;
  double vartheta = 0.1;
  double vartheta_min = 1e-4;
  double vartheta_max = 1.0;
  double epsilon_cautious = 1e-6;
  double theta_tol = 7.450580596923828e-8;  ///< 5 * sqrt(machine epsilon)
  int max_iters = 2000;
  RChoice r_choice = RChoice::Choice2;
  TraceLevel trace = TraceLevel::None;
  double alpha_max = 100.0;
  int ls_max_trials = 50;
  bool warm_start_lambda = false;
  bool force_r_zero = false;  ///< scalar-regression switch, not exposed on the CLI
  SubproblemOptions subproblem;
};

/// Throws std::invalid_argument when a parameter is out of range.
void validate(const SolverConfig& cfg);

enum class RunStatus { Converged, MaxIters, LineSearchFailed, SubproblemStalled, NonFiniteValue };

std::string to_string(RunStatus s);

struct IterationRecord {
  int k = 0;
  double theta = 0.0;
  double d_norm = 0.0;
  double alpha = 0.0;
  bool unit_step = false;
  long f_evals = 0;
  long jf_evals = 0;
  // Basic trace and above:
  Vector x;
  Vector F;
  // Full trace only:
  Vector d;
  Vector gamma_dot_s;
  Vector r;
  Vector psi;
  double d_sd_norm = -1.0;  ///< negative when not computed
  bool spd_ok = true;       ///< every model matrix factorized after the update
};

struct RunResult {
  RunStatus status = RunStatus::MaxIters;
  Vector x;
  Vector F;
  double theta = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;
  long f_evals = 0;
  long jf_evals = 0;
  std::string message;
  std::vector<IterationRecord> trace;
};

RunResult run(const Problem& p, const Vector& x0, const SolverConfig& cfg);

/// Seed for start index `index` under base seed `seed`.
std::uint64_t start_seed(std::uint64_t seed, int index);

/// Deterministic multi-start driver; results are ordered by start index
/// regardless of how runs are scheduled across `jobs` workers.
std::vector<RunResult> run_multistart(const Problem& p, int n_starts, std::uint64_t seed,
                                      const SolverConfig& cfg, int jobs = 1);

}  // namespace moobfgs
