#include "moobfgs/benchmark.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "moobfgs/suite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace moobfgs {

std::string fmt_g17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string join_vector(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += fmt_g17(v(i));
  }
  return out;
}

Vector parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) vals.push_back(std::strtod(tok.c_str(), nullptr));
  Vector v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

std::string csv_quote(const std::string& field) {
  bool needs = field.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

bool status_from_string(const std::string& s, RunStatus& out) {
  for (RunStatus st : {RunStatus::Converged, RunStatus::MaxIters, RunStatus::LineSearchFailed,
                       RunStatus::SubproblemStalled, RunStatus::NonFiniteValue}) {
    if (to_string(st) == s) {
      out = st;
      return true;
    }
  }
  return false;
}

json config_to_json(const SolverConfig& cfg) {
  json j;
  j["rho"] = cfg.rho;
  j["sigma"] = cfg.sigma;
  j["vartheta"] = cfg.vartheta;
  j["vartheta_min"] = cfg.vartheta_min;
  j["vartheta_max"] = cfg.vartheta_max;
  j["epsilon_cautious"] = cfg.epsilon_cautious;
  j["theta_tol"] = cfg.theta_tol;
  j["max_iters"] = cfg.max_iters;
  j["r_choice"] = cfg.r_choice == RChoice::Choice2 ? "choice2" : "choice1";
  j["alpha_max"] = cfg.alpha_max;
  j["ls_max_trials"] = cfg.ls_max_trials;
  j["warm_start_lambda"] = cfg.warm_start_lambda;
  return j;
}

SolverConfig config_from_json(const json& j) {
  SolverConfig cfg;
  cfg.rho = j.at("rho").get<double>();
  cfg.sigma = j.at("sigma").get<double>();
  cfg.vartheta = j.at("vartheta").get<double>();
  cfg.vartheta_min = j.at("vartheta_min").get<double>();
  cfg.vartheta_max = j.at("vartheta_max").get<double>();
  cfg.epsilon_cautious = j.at("epsilon_cautious").get<double>();
  cfg.theta_tol = j.at("theta_tol").get<double>();
  cfg.max_iters = j.at("max_iters").get<int>();
  cfg.r_choice = j.at("r_choice").get<std::string>() == "choice1" ? RChoice::Choice1
                                                                  : RChoice::Choice2;
  cfg.alpha_max = j.at("alpha_max").get<double>();
  cfg.ls_max_trials = j.at("ls_max_trials").get<int>();
  cfg.warm_start_lambda = j.at("warm_start_lambda").get<bool>();
  return cfg;
}

void write_metric_csv(const std::string& path, const std::vector<MetricRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  out << "problem,solver,value,flagged\n";
  for (const auto& r : rows) {
    out << csv_quote(r.problem) << ',' << csv_quote(r.solver) << ',' << fmt_g17(r.value) << ','
        << (r.flagged ? 1 : 0) << '\n';
  }
}

void write_profile_csv(const std::string& path, const std::vector<ProfileCurve>& curves) {
  std::ofstream out(path, std::ios::binary);
  out << "solver,tau,rho\n";
  for (const auto& c : curves) {
    for (size_t i = 0; i < c.tau.size(); ++i) {
      out << csv_quote(c.solver) << ',' << fmt_g17(c.tau[i]) << ',' << fmt_g17(c.rho[i]) << '\n';
    }
  }
}

}  // namespace

void write_manifest(const ExperimentSpec& spec, const std::string& path) {
  json j;
  j["format"] = "moobfgs-benchmark-manifest";
  j["format_version"] = 1;
  j["tool_version"] = "0.1.0";
  j["problems"] = spec.problems;
  j["solvers"] = spec.solvers;
  j["n_starts"] = spec.n_starts;
  j["seed"] = spec.seed;
  j["jobs"] = spec.jobs;
  j["config"] = config_to_json(spec.config);
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << '\n';
}

ExperimentSpec read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  json j;
  in >> j;
  ExperimentSpec spec;
  spec.problems = j.at("problems").get<std::vector<std::string>>();
  spec.solvers = j.at("solvers").get<std::vector<std::string>>();
  spec.n_starts = j.at("n_starts").get<int>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.jobs = j.at("jobs").get<int>();
  spec.config = config_from_json(j.at("config"));
  return spec;
}

void compute_metrics(ResultsBundle& bundle) {
  bundle.fronts.clear();
  bundle.purity_rows.clear();
  bundle.gamma_rows.clear();
  bundle.delta_rows.clear();

  // Per (problem, solver) fronts from the converged runs.
  for (const auto& problem : bundle.spec.problems) {
    std::vector<FrontPoint> merged;
    for (const auto& solver : bundle.spec.solvers) {
      std::vector<FrontPoint> raw;
      for (const auto& run : bundle.runs) {
        if (run.problem == problem && run.solver == solver &&
            run.status == RunStatus::Converged) {
          raw.push_back(FrontPoint{run.F, solver, problem, run.start});
        }
      }
      FrontArchive filtered = nondominated_filter(raw);
      for (auto& p : filtered.points) merged.push_back(std::move(p));
    }
    bundle.fronts[problem] = std::move(merged);
  }

  for (const auto& problem : bundle.spec.problems) {
    const auto& merged = bundle.fronts.at(problem);
    FrontArchive reference = nondominated_filter(merged);

    std::vector<Vector> ref_points;
    ref_points.reserve(reference.points.size());
    for (const auto& p : reference.points) ref_points.push_back(p.f);

    for (const auto& solver : bundle.spec.solvers) {
      FrontArchive front;
      for (const auto& p : merged) {
        if (p.solver == solver) front.points.push_back(p);
      }
      if (!front.points.empty()) front.m = static_cast<int>(front.points.front().f.size());
      else if (!ref_points.empty()) front.m = static_cast<int>(ref_points.front().size());

      const PurityResult pu = purity(front, reference);
      bundle.purity_rows.push_back(MetricRow{problem, solver, pu.value, pu.empty_front});

      const SpreadResult sp = spread_metrics(
          front, ref_points.empty() ? std::nullopt : std::make_optional(ref_points));
      bundle.gamma_rows.push_back(MetricRow{problem, solver, sp.gamma, sp.degenerate});
      bundle.delta_rows.push_back(MetricRow{problem, solver, sp.delta, sp.degenerate});
    }
  }

  // Profiles over (problem, start) instances.
  const auto n_solvers = bundle.spec.solvers.size();
  std::vector<std::string> instances;
  std::vector<std::vector<double>> time_cost, evals_cost;
  for (const auto& problem : bundle.spec.problems) {
    for (int start = 0; start < bundle.spec.n_starts; ++start) {
      std::vector<double> tc(n_solvers, std::numeric_limits<double>::infinity());
      std::vector<double> ec(n_solvers, std::numeric_limits<double>::infinity());
      for (size_t s = 0; s < n_solvers; ++s) {
        for (const auto& run : bundle.runs) {
          if (run.problem == problem && run.solver == bundle.spec.solvers[s] &&
              run.start == start && run.status == RunStatus::Converged) {
            tc[s] = std::max(run.wall_ms, 1e-9);
            ec[s] = static_cast<double>(run.f_evals + run.jf_evals);
          }
        }
      }
      instances.push_back(problem + "#" + std::to_string(start));
      time_cost.push_back(std::move(tc));
      evals_cost.push_back(std::move(ec));
    }
  }

  auto to_table = [&](const std::vector<std::vector<double>>& cost) {
    ProfileTable t;
    t.solvers = bundle.spec.solvers;
    t.instances = instances;
    t.cost.resize(static_cast<Eigen::Index>(instances.size()),
                  static_cast<Eigen::Index>(n_solvers));
    for (size_t i = 0; i < cost.size(); ++i)
      for (size_t s = 0; s < n_solvers; ++s)
        t.cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) = cost[i][s];
    return t;
  };
  bundle.time_profile = performance_profile(to_table(time_cost));
  bundle.evals_profile = performance_profile(to_table(evals_cost));
}

void write_bundle(const ResultsBundle& bundle) {
  const fs::path out(bundle.spec.outdir);
  fs::create_directories(out / "fronts");
  fs::create_directories(out / "metrics");
  fs::create_directories(out / "profiles");

  {
    std::ofstream runs(out / "runs.csv", std::ios::binary);
    runs << "problem,solver,start,status,iterations,f_evals,jf_evals,theta,final_x,final_F,"
            "wall_ms\n";
    for (const auto& r : bundle.runs) {
      runs << csv_quote(r.problem) << ',' << csv_quote(r.solver) << ',' << r.start << ','
           << to_string(r.status) << ',' << r.iterations << ',' << r.f_evals << ','
           << r.jf_evals << ',' << fmt_g17(r.theta) << ',' << csv_quote(join_vector(r.x)) << ','
           << csv_quote(join_vector(r.F)) << ',' << fmt_g17(r.wall_ms) << '\n';
    }
  }

  for (const auto& [problem, points] : bundle.fronts) {
    std::ofstream front(out / "fronts" / (problem + ".csv"), std::ios::binary);
    front << "solver,start,F\n";
    for (const auto& p : points) {
      front << csv_quote(p.solver) << ',' << p.start << ',' << csv_quote(join_vector(p.f))
            << '\n';
    }
  }

  write_metric_csv((out / "metrics" / "purity.csv").string(), bundle.purity_rows);
  write_metric_csv((out / "metrics" / "gamma.csv").string(), bundle.gamma_rows);
  write_metric_csv((out / "metrics" / "delta.csv").string(), bundle.delta_rows);
  write_profile_csv((out / "profiles" / "time.csv").string(), bundle.time_profile);
  write_profile_csv((out / "profiles" / "evals.csv").string(), bundle.evals_profile);
}

ResultsBundle run_benchmark(const ExperimentSpec& spec) {
  validate(spec.config);
  for (const auto& name : spec.problems) {
    if (find_problem(name) == nullptr) throw std::invalid_argument("unknown problem: " + name);
  }
  std::vector<Variant> variants;
  for (const auto& name : spec.solvers) {
    Variant v;
    if (!variant_from_string(name, v)) throw std::invalid_argument("unknown solver: " + name);
    variants.push_back(v);
  }
  if (spec.n_starts < 1) throw std::invalid_argument("n_starts must be >= 1");

  ResultsBundle bundle;
  bundle.spec = spec;

  fs::create_directories(spec.outdir);
  write_manifest(spec, (fs::path(spec.outdir) / "manifest.json").string());

  for (const auto& problem_name : spec.problems) {
    const Problem& problem = *find_problem(problem_name);
    for (size_t s = 0; s < spec.solvers.size(); ++s) {
      SolverConfig cfg = spec.config;
      cfg.variant = variants[s];
      const auto results = run_multistart(problem, spec.n_starts, spec.seed, cfg, spec.jobs);
      for (int start = 0; start < spec.n_starts; ++start) {
        const RunResult& r = results[static_cast<size_t>(start)];
        RunRow row;
        row.problem = problem_name;
        row.solver = spec.solvers[s];
        row.start = start;
        row.status = r.status;
        row.iterations = r.iterations;
        row.f_evals = r.f_evals;
        row.jf_evals = r.jf_evals;
        row.theta = r.theta;
        row.x = r.x;
        row.F = r.F;
        row.wall_ms = r.wall_seconds * 1e3;
        bundle.runs.push_back(std::move(row));
      }
    }
  }

  compute_metrics(bundle);
  write_bundle(bundle);
  return bundle;
}

std::vector<RunRow> read_runs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<RunRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv_split(line);
    if (f.size() != 11) throw std::runtime_error("malformed runs.csv row");
    RunRow r;
    r.problem = f[0];
    r.solver = f[1];
    r.start = std::stoi(f[2]);
    if (!status_from_string(f[3], r.status)) throw std::runtime_error("bad status: " + f[3]);
    r.iterations = std::stoi(f[4]);
    r.f_evals = std::stol(f[5]);
    r.jf_evals = std::stol(f[6]);
    r.theta = std::strtod(f[7].c_str(), nullptr);
    r.x = parse_vector(f[8]);
    r.F = parse_vector(f[9]);
    r.wall_ms = std::strtod(f[10].c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::map<std::string, std::vector<FrontPoint>> read_fronts_dir(const std::string& dir) {
  std::map<std::string, std::vector<FrontPoint>> fronts;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    const std::string problem = file.stem().string();
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    std::vector<FrontPoint> points;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = csv_split(line);
      if (f.size() != 3) throw std::runtime_error("malformed front row in " + file.string());
      FrontPoint p;
      p.solver = f[0];
      p.start = std::stoi(f[1]);
      p.f = parse_vector(f[2]);
      p.problem = problem;
      points.push_back(std::move(p));
    }
    fronts[problem] = std::move(points);
  }
  return fronts;
}

std::vector<MetricRow> read_metric_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv_split(line);
    if (f.size() != 4) throw std::runtime_error("malformed metric row");
    rows.push_back(MetricRow{f[0], f[1], std::strtod(f[2].c_str(), nullptr), f[3] == "1"});
  }
  return rows;
}

void recompute_metrics(const std::string& outdir) {
  const fs::path out(outdir);
  ExperimentSpec spec = read_manifest((out / "manifest.json").string());
  spec.outdir = outdir;

  ResultsBundle bundle;
  bundle.spec = spec;
  bundle.runs = read_runs_csv((out / "runs.csv").string());
  compute_metrics(bundle);
  write_bundle(bundle);
}

std::string run_result_to_json(const RunResult& r, bool include_trace) {
  json j;
  j["status"] = to_string(r.status);
  j["iterations"] = r.iterations;
  j["f_evals"] = r.f_evals;
  j["jf_evals"] = r.jf_evals;
  j["theta"] = r.theta;
  j["wall_seconds"] = r.wall_seconds;
  j["x"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
  j["F"] = std::vector<double>(r.F.data(), r.F.data() + r.F.size());
  if (!r.message.empty()) j["message"] = r.message;
  if (include_trace) {
    json trace = json::array();
    for (const auto& rec : r.trace) {
      json t;
      t["k"] = rec.k;
      t["theta"] = rec.theta;
      t["d_norm"] = rec.d_norm;
      t["alpha"] = rec.alpha;
      t["unit_step"] = rec.unit_step;
      t["f_evals"] = rec.f_evals;
      t["jf_evals"] = rec.jf_evals;
      if (rec.x.size() > 0) t["x"] = std::vector<double>(rec.x.data(), rec.x.data() + rec.x.size());
      if (rec.F.size() > 0) t["F"] = std::vector<double>(rec.F.data(), rec.F.data() + rec.F.size());
      if (rec.d_sd_norm >= 0.0) t["d_sd_norm"] = rec.d_sd_norm;
      if (rec.psi.size() > 0)
        t["psi"] = std::vector<double>(rec.psi.data(), rec.psi.data() + rec.psi.size());
      trace.push_back(std::move(t));
    }
    j["trace"] = std::move(trace);
  }
  return j.dump(2);
}

std::string problem_listing_json() {
  json arr = json::array();
  for (const auto& p : problem_suite()) {
    json j;
    j["name"] = p.name;
    j["n"] = p.n;
    j["m"] = p.m;
    j["convex"] = p.convex;
    j["box_lower"] = std::vector<double>(p.lower.data(), p.lower.data() + p.lower.size());
    j["box_upper"] = std::vector<double>(p.upper.data(), p.upper.data() + p.upper.size());
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace moobfgs
