#pragma once

#include <map>
#include <string>
#include <vector>

#include "moobfgs/metrics.hpp"
#include "moobfgs/solver.hpp"

namespace moobfgs {

/// 17-significant-digit, locale-independent number formatting used by every
/// writer; values round-trip exactly through the readers.
std::string fmt_g17(double v);

struct ExperimentSpec {
  std::vector<std::string> problems;
  std::vector<std::string> solvers;
  int n_starts = 10;
  std::uint64_t seed = 1;
  int jobs = 1;
  SolverConfig config;  ///< shared settings; the variant field is set per solver
  std::string outdir;
};

struct RunRow {
  std::string problem;
  std::string solver;
  int start = 0;
  RunStatus status = RunStatus::MaxIters;
  int iterations = 0;
  long f_evals = 0;
  long jf_evals = 0;
  double theta = 0.0;
  Vector x;
  Vector F;
  double wall_ms = 0.0;
};

struct MetricRow {
  std::string problem;
  std::string solver;
  double value = 0.0;
  bool flagged = false;
};

struct ResultsBundle {
  ExperimentSpec spec;
  std::vector<RunRow> runs;
  /// Per-problem nondominated fronts, one entry per solver point.
  std::map<std::string, std::vector<FrontPoint>> fronts;
  std::vector<MetricRow> purity_rows;
  std::vector<MetricRow> gamma_rows;
  std::vector<MetricRow> delta_rows;
  std::vector<ProfileCurve> time_profile;
  std::vector<ProfileCurve> evals_profile;
};

/// Runs the full sweep and writes the bundle under spec.outdir
/// (manifest.json first, then runs.csv, fronts/, metrics/, profiles/).
ResultsBundle run_benchmark(const ExperimentSpec& spec);

/// Derives fronts, metric tables, and profiles from the run rows in place.
void compute_metrics(ResultsBundle& bundle);

/// Writers and readers for the on-disk layout.
void write_bundle(const ResultsBundle& bundle);
void write_manifest(const ExperimentSpec& spec, const std::string& path);
ExperimentSpec read_manifest(const std::string& path);
std::vector<RunRow> read_runs_csv(const std::string& path);
std::map<std::string, std::vector<FrontPoint>> read_fronts_dir(const std::string& dir);
std::vector<MetricRow> read_metric_csv(const std::string& path);

/// Recomputes metrics and profiles from runs.csv and fronts/ in `outdir`,
/// rewriting metrics/ and profiles/.
void recompute_metrics(const std::string& outdir);

/// JSON text for one run result (status, iterations, evals, timing, final
/// point) with an optional per-iteration trace.
std::string run_result_to_json(const RunResult& r, bool include_trace);

/// Registry metadata as a JSON array (name, n, m, convex, start box).
std::string problem_listing_json();

}  // namespace moobfgs
