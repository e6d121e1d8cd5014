// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion checks re-derive expected values independently of the
// library paths they exercise (grid searches, pairwise filters, a textbook
// single-objective method).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "moobfgs/benchmark.hpp"
#include "moobfgs/numerics.hpp"
#include "moobfgs/suite.hpp"
#include "oracles.hpp"

using namespace moobfgs;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SweepData {
  // results[solver][problem] -> per-start runs with full traces
  std::map<std::string, std::map<std::string, std::vector<RunResult>>> results;
  double seconds = 0.0;
};

const std::vector<std::string> kSolvers = {"global-bfgs", "bfgs-wolfe", "cautious-bfgs-armijo"};
constexpr int kStarts = 10;
constexpr std::uint64_t kSeed = 1;

SweepData run_sweep() {
  SweepData sweep;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& solver : kSolvers) {
    SolverConfig cfg;
    variant_from_string(solver, cfg.variant);
    cfg.trace = TraceLevel::Full;
    for (const auto& p : problem_suite()) {
      sweep.results[solver][p.name] = run_multistart(p, kStarts, kSeed, cfg, 4);
    }
  }
  sweep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sweep;
}

// ---------------------------------------------------------------------------

Criterion check_wolfe_compliance(const SweepData& sweep) {
  Criterion c{1, "wolfe-compliance"};
  const SolverConfig cfg;  // default rho/sigma used by the sweep
  long steps = 0, violations = 0;

  for (const auto& solver : kSolvers) {
    const bool curvature_required = solver != "cautious-bfgs-armijo";
    for (const auto& p : problem_suite()) {
      for (const auto& run : sweep.results.at(solver).at(p.name)) {
        for (const auto& rec : run.trace) {
          if (rec.alpha <= 0.0) continue;
          ++steps;
          EvalCounter counter;
          const auto ev_k = evaluate(p, rec.x, counter);
          const double Dxd = descent_value(ev_k.J, rec.d);
          const Vector x_next = rec.x + rec.alpha * rec.d;
          const auto ev_next = evaluate(p, x_next, counter);
          bool ok = Dxd < 0.0 &&
                    wolfe_sufficient(ev_next.F, ev_k.F, cfg.rho, rec.alpha, Dxd);
          if (ok && curvature_required) {
            ok = wolfe_curvature(ev_next.J, rec.d, cfg.sigma, Dxd);
          }
          if (!ok) ++violations;
        }
      }
    }
  }

  std::ostringstream detail;
  detail << steps << " accepted steps re-validated, " << violations << " violations, sweep took "
         << sweep.seconds << " s";
  c.detail = detail.str();
  c.pass = violations == 0 && steps > 0 && sweep.seconds < 120.0;
  return c;
}

Criterion check_spd_chain(const SweepData& sweep) {
  Criterion c{2, "spd-preservation-positivity-chain"};
  const SolverConfig cfg;
  long updates = 0, curvature_failures = 0, bound_failures = 0, spd_failures = 0;

  for (const auto& p : problem_suite()) {
    for (const auto& run : sweep.results.at("global-bfgs").at(p.name)) {
      for (const auto& rec : run.trace) {
        if (rec.alpha <= 0.0 || rec.gamma_dot_s.size() == 0) continue;
        const double s_norm2 = (rec.alpha * rec.d).squaredNorm();
        for (Eigen::Index j = 0; j < rec.gamma_dot_s.size(); ++j) {
          ++updates;
          if (!(rec.gamma_dot_s(j) > 0.0)) ++curvature_failures;
          if (rec.d_sd_norm >= 0.0) {
            const double bound = cfg.vartheta_min * rec.d_sd_norm * s_norm2;
            if (rec.gamma_dot_s(j) < bound * (1.0 - 1e-9)) ++bound_failures;
          }
        }
        if (!rec.spd_ok) ++spd_failures;
      }
    }
  }

  std::ostringstream detail;
  detail << updates << " updates: " << curvature_failures << " curvature, " << bound_failures
         << " bound, " << spd_failures << " factorization failures";
  c.detail = detail.str();
  c.pass = updates > 0 && curvature_failures == 0 && bound_failures == 0 && spd_failures == 0;
  return c;
}

Criterion check_subproblem_oracle() {
  Criterion c{3, "subproblem-oracle-equivalence"};
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t state = 20240;
  int checked = 0, theta_failures = 0, kkt_failures = 0;

  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial < 100 ? 1 : 2;
    const int m = 2;
    Matrix G(m, n);
    for (int j = 0; j < m; ++j) G.row(j) = oracles::random_vector(n, state, -0.7, 0.7);
    HessianSet H;
    std::vector<Matrix> Bs;
    for (int j = 0; j < m; ++j) {
      H.B.push_back(oracles::random_spd(n, state));
      Bs.push_back(H.B.back());
    }

    const auto sol = solve_direction(G, H);
    const double theta_grid = n == 1 ? oracles::grid_theta_1d(G, Bs, 3.0, 1e-4)
                                     : oracles::grid_theta_2d(G, Bs, 3.0, 0.01, 5e-5);
    if (std::abs(sol.theta - theta_grid) > 1e-3) ++theta_failures;

    Matrix Bw = Matrix::Zero(n, n);
    for (int j = 0; j < m; ++j) Bw += sol.lambda(j) * H.B[static_cast<size_t>(j)];
    double max_g = 0.0;
    for (int j = 0; j < m; ++j) max_g = std::max(max_g, G.row(j).norm());
    const double residual = (Bw * sol.d + G.transpose() * sol.lambda).norm();
    if (residual > 1e-8 * (1.0 + max_g)) ++kkt_failures;
    ++checked;
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream detail;
  detail << checked << " instances, " << theta_failures << " value mismatches, " << kkt_failures
         << " stationarity failures, " << secs << " s";
  c.detail = detail.str();
  c.pass = checked == 200 && theta_failures == 0 && kkt_failures == 0 && secs < 30.0;
  return c;
}

Criterion check_criticality() {
  Criterion c{4, "criticality-characterization"};
  std::uint64_t state = 5150;
  int critical_failures = 0, noncritical_failures = 0;

  // Constructed critical instances: zero lies in the gradient hull.
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2;
    Vector g1 = oracles::random_vector(n, state, -2.0, 2.0);
    if (g1.norm() < 0.1) continue;
    const double scale = 0.2 + 2.0 * oracles::unif(state);
    Matrix G(2, n);
    G.row(0) = g1.transpose();
    G.row(1) = (-scale * g1).transpose();
    HessianSet H;
    H.B.push_back(oracles::random_spd(n, state));
    H.B.push_back(oracles::random_spd(n, state));
    const auto sol = solve_direction(G, H);
    if (!(sol.d.norm() <= 1e-10 && std::abs(sol.theta) <= 1e-10)) ++critical_failures;
  }
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2, m = 3;
    Vector lambda = project_simplex(oracles::random_vector(m, state, 0.2, 1.0));
    if (lambda.minCoeff() < 0.05) continue;
    Matrix G(m, n);
    G.row(0) = oracles::random_vector(n, state, -2.0, 2.0).transpose();
    G.row(1) = oracles::random_vector(n, state, -2.0, 2.0).transpose();
    G.row(2) =
        (-(lambda(0) * G.row(0).transpose() + lambda(1) * G.row(1).transpose()) / lambda(2))
            .transpose();
    HessianSet H;
    for (int j = 0; j < m; ++j) H.B.push_back(oracles::random_spd(n, state));
    const auto sol = solve_direction(G, H);
    if (!(sol.d.norm() <= 1e-10 && std::abs(sol.theta) <= 1e-10)) ++critical_failures;
  }

  // Constructed noncritical instances: gradients share a strict half-space.
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2, m = 2 + static_cast<int>(oracles::unif(state) * 1.999);
    Matrix G(m, n);
    for (int j = 0; j < m; ++j) {
      G.row(j) = oracles::random_vector(n, state, 0.2, 2.0).transpose();  // positive orthant
    }
    HessianSet H;
    for (int j = 0; j < m; ++j) H.B.push_back(oracles::random_spd(n, state));
    const auto sol = solve_direction(G, H);
    const double D = descent_value(G, sol.d);
    if (!(D < sol.theta && sol.theta < 0.0)) ++noncritical_failures;
  }

  std::ostringstream detail;
  detail << critical_failures << " critical-side failures, " << noncritical_failures
         << " noncritical-side failures";
  c.detail = detail.str();
  c.pass = critical_failures == 0 && noncritical_failures == 0;
  return c;
}

Criterion check_convergence_rates(const SweepData& sweep) {
  Criterion c{5, "convergence-robustness"};
  std::ostringstream detail;
  bool pass = true;

  for (const auto& solver : kSolvers) {
    int converged = 0, total = 0;
    for (const auto& p : problem_suite()) {
      for (const auto& run : sweep.results.at(solver).at(p.name)) {
        ++total;
        if (run.status == RunStatus::Converged) ++converged;
      }
    }
    const double rate = static_cast<double>(converged) / static_cast<double>(total);
    detail << solver << " " << converged << "/" << total << "  ";
    if (rate < 0.90) pass = false;
  }

  int convex_converged = 0, convex_total = 0;
  for (const auto& p : problem_suite()) {
    if (!p.convex) continue;
    for (const auto& run : sweep.results.at("global-bfgs").at(p.name)) {
      ++convex_total;
      if (run.status == RunStatus::Converged) ++convex_converged;
    }
  }
  const double convex_rate =
      static_cast<double>(convex_converged) / static_cast<double>(convex_total);
  detail << "convex global-bfgs " << convex_converged << "/" << convex_total;
  if (convex_rate < 0.95) pass = false;

  c.detail = detail.str();
  c.pass = pass;
  return c;
}

Criterion check_superlinear_signature(const SweepData& sweep) {
  Criterion c{6, "superlinear-signature"};
  int converged_runs = 0, unit_tail_runs = 0, ratio_runs = 0;

  for (const auto& p : problem_suite()) {
    if (!p.strongly_convex) continue;
    for (const auto& run : sweep.results.at("global-bfgs").at(p.name)) {
      if (run.status != RunStatus::Converged) continue;
      ++converged_runs;
      const int K = run.iterations;
      if (K < 4) {
        // Too short for a three-step tail; immediate convergence counts.
        ++unit_tail_runs;
        ++ratio_runs;
        continue;
      }

      bool units = true;
      for (const auto& rec : run.trace) {
        if (rec.k >= K - 3 && rec.k <= K - 1 && !(rec.alpha == 1.0 && rec.unit_step)) {
          units = false;
        }
      }
      if (units) ++unit_tail_runs;

      auto error_at = [&](int k) -> double {
        for (const auto& rec : run.trace) {
          if (rec.k == k) return (rec.x - run.x).norm();
        }
        return -1.0;
      };
      bool ratios = true;
      for (int k = K - 3; k <= K - 1; ++k) {
        const double e0 = error_at(k);
        const double e1 = error_at(k + 1);
        if (e0 < 0.0 || e1 < 0.0) {
          ratios = false;
          break;
        }
        if (e0 == 0.0) continue;  // already at the limit
        if (!(e1 <= 0.5 * e0)) {
          ratios = false;
          break;
        }
      }
      if (ratios) ++ratio_runs;
    }
  }

  std::ostringstream detail;
  detail << converged_runs << " converged strongly-convex runs, " << unit_tail_runs
         << " with unit-step tails, " << ratio_runs << " with halving error ratios";
  c.detail = detail.str();
  c.pass = converged_runs > 0 &&
           unit_tail_runs >= static_cast<int>(std::ceil(0.90 * converged_runs)) &&
           ratio_runs >= static_cast<int>(std::ceil(0.80 * converged_runs));
  return c;
}

Criterion check_scalar_reduction() {
  Criterion c{7, "scalar-reduction"};
  double worst = 0.0;
  bool structure_ok = true;

  for (int instance = 0; instance < 2; ++instance) {
    const Problem p = instance == 0 ? make_rosenbrock() : make_convex_quadratic(4, 99);
    Vector x0(p.n);
    if (instance == 0) {
      x0 << -1.2, 1.0;
    } else {
      x0 = Vector::Constant(4, 2.0);
    }

    SolverConfig cfg;
    cfg.force_r_zero = true;
    cfg.trace = TraceLevel::Basic;
    cfg.max_iters = 60;
    const RunResult res = run(p, x0, cfg);

    // Textbook single-objective route: plain factorized direction, the same
    // step-size rule, the classical update.
    oracles::TextbookBfgs oracle(p.n);
    EvalCounter counter;
    Vector x = x0;
    std::vector<Vector> oracle_iterates{x};
    Vector g = p.jacobian(x).row(0).transpose();
    Vector F_x = p.objectives(x);
    for (int k = 0; k < 10; ++k) {
      if (g.norm() <= 1e-13) break;
      const Vector d = oracle.direction(g);
      const double Dxd = g.dot(d);
      if (!(Dxd < 0.0)) break;
      WolfeParams params;
      const auto ls = wolfe_search(p, counter, x, d, F_x, Dxd, params);
      const Vector x_next = x + ls.alpha * d;
      const Vector g_next = ls.J_new.row(0).transpose();
      oracle.update(x_next - x, g_next - g);
      x = x_next;
      g = g_next;
      F_x = ls.F_new;
      oracle_iterates.push_back(x);
    }

    const size_t compare =
        std::min<size_t>(oracle_iterates.size(), std::min<size_t>(res.trace.size(), 11));
    if (compare < 3) structure_ok = false;
    for (size_t k = 0; k < compare; ++k) {
      if (res.trace[k].x.size() != oracle_iterates[k].size()) {
        structure_ok = false;
        break;
      }
      worst = std::max(worst, (res.trace[k].x - oracle_iterates[k]).cwiseAbs().maxCoeff());
    }
  }

  std::ostringstream detail;
  detail << "largest iterate deviation over the first ten steps: " << worst;
  c.detail = detail.str();
  c.pass = structure_ok && worst <= 1e-10;
  return c;
}

Criterion check_metrics_oracles() {
  Criterion c{8, "metrics-oracles"};
  std::uint64_t state = 31337;
  int filter_failures = 0;

  for (int corpus = 0; corpus < 50; ++corpus) {
    const int count = 10 + static_cast<int>(oracles::unif(state) * 190);
    const int m = 2 + static_cast<int>(oracles::unif(state) * 1.999);
    std::vector<Vector> pts;
    for (int i = 0; i < count; ++i) pts.push_back(oracles::random_vector(m, state, 0.0, 1.0));
    pts.push_back(pts.front());  // exact duplicate

    const auto mine = nondominated_filter(pts);
    const auto reference = oracles::brute_force_filter(pts);
    if (mine.points.size() != reference.size()) {
      ++filter_failures;
      continue;
    }
    for (const auto& p : mine.points) {
      bool found = false;
      for (const auto& r : reference) {
        if (p.f.size() == r.size() && (p.f - r).cwiseAbs().maxCoeff() == 0.0) {
          found = true;
          break;
        }
      }
      if (!found) {
        ++filter_failures;
        break;
      }
    }
  }

  // Hand-computed purity example.
  auto mk = [](double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
  };
  const auto reference =
      nondominated_filter(std::vector<Vector>{mk(0, 1), mk(2, 2), mk(1, 0)});
  FrontArchive solver_front;
  for (auto v : {mk(0, 1), mk(2, 2)}) solver_front.points.push_back(FrontPoint{v, "", "", -1});
  solver_front.m = 2;
  const bool purity_ok = purity(solver_front, reference).value == 0.5;

  // Hand-computed three-point spread example.
  FrontArchive tri;
  for (auto v : {mk(0, 1), mk(0.9, 0.1), mk(1, 0)}) tri.points.push_back(FrontPoint{v, "", "", -1});
  tri.m = 2;
  const auto sp = spread_metrics(tri);
  const double gap1 = (mk(0.9, 0.1) - mk(0, 1)).norm();
  const double gap2 = (mk(1, 0) - mk(0.9, 0.1)).norm();
  const double mean = 0.5 * (gap1 + gap2);
  const bool spread_ok =
      std::abs(sp.gamma - std::max(gap1, gap2)) < 1e-14 &&
      std::abs(sp.delta - (std::abs(gap1 - mean) + std::abs(gap2 - mean)) / (2.0 * mean)) < 1e-12;

  // Worked profile example.
  ProfileTable t;
  t.solvers = {"A", "B"};
  t.instances = {"p1", "p2"};
  t.cost.resize(2, 2);
  t.cost << 1.0, 2.0, 4.0, 2.0;
  const auto curves = performance_profile(t);
  auto value_at = [](const ProfileCurve& pc, double tau) {
    double v = 0.0;
    for (size_t i = 0; i < pc.tau.size(); ++i)
      if (pc.tau[i] <= tau) v = pc.rho[i];
    return v;
  };
  const bool profile_ok = curves.size() == 2 && value_at(curves[0], 1.0) == 0.5 &&
                          value_at(curves[1], 1.0) == 0.5 && value_at(curves[0], 2.0) == 1.0 &&
                          value_at(curves[1], 2.0) == 1.0;

  std::ostringstream detail;
  detail << filter_failures << " filter mismatches; purity " << (purity_ok ? "ok" : "bad")
         << ", spread " << (spread_ok ? "ok" : "bad") << ", profile "
         << (profile_ok ? "ok" : "bad");
  c.detail = detail.str();
  c.pass = filter_failures == 0 && purity_ok && spread_ok && profile_ok;
  return c;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_last_column(const std::string& text) {
  std::string out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    out += line.substr(0, line.rfind(','));
    out += '\n';
  }
  return out;
}

Criterion check_benchmark_determinism() {
  Criterion c{9, "benchmark-determinism"};
  const fs::path dir1 = fs::temp_directory_path() / "moobfgs-acceptance-a";
  const fs::path dir2 = fs::temp_directory_path() / "moobfgs-acceptance-b";
  fs::remove_all(dir1);
  fs::remove_all(dir2);

  ExperimentSpec spec;
  for (const auto& p : problem_suite()) spec.problems.push_back(p.name);
  spec.solvers = kSolvers;
  spec.n_starts = 5;
  spec.seed = 3;
  spec.jobs = 4;
  spec.outdir = dir1.string();
  run_benchmark(spec);

  ExperimentSpec again = read_manifest((dir1 / "manifest.json").string());
  again.outdir = dir2.string();
  again.jobs = 1;  // scheduling must not affect the bytes
  run_benchmark(again);

  int mismatches = 0;
  auto compare = [&](const fs::path& rel, bool strip_timing) {
    const std::string a = slurp(dir1 / rel);
    const std::string b = slurp(dir2 / rel);
    const bool equal = strip_timing ? strip_last_column(a) == strip_last_column(b) : a == b;
    if (!equal) ++mismatches;
  };

  compare("manifest.json", false);
  compare("runs.csv", true);  // wall-clock column excluded
  for (const auto& p : problem_suite()) compare(fs::path("fronts") / (p.name + ".csv"), false);
  compare(fs::path("metrics") / "purity.csv", false);
  compare(fs::path("metrics") / "gamma.csv", false);
  compare(fs::path("metrics") / "delta.csv", false);
  compare(fs::path("profiles") / "evals.csv", false);

  fs::remove_all(dir1);
  fs::remove_all(dir2);

  std::ostringstream detail;
  detail << mismatches << " file mismatches across the manifest re-run";
  c.detail = detail.str();
  c.pass = mismatches == 0;
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;

  const SweepData sweep = run_sweep();
  results.push_back(check_wolfe_compliance(sweep));
  results.push_back(check_spd_chain(sweep));
  results.push_back(check_subproblem_oracle());
  results.push_back(check_criticality());
  results.push_back(check_convergence_rates(sweep));
  results.push_back(check_superlinear_signature(sweep));
  results.push_back(check_scalar_reduction());
  results.push_back(check_metrics_oracles());
  results.push_back(check_benchmark_determinism());

  bool all_pass = true;
  for (const auto& c : results) {
    std::printf("%s  %d  %-36s %s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                c.detail.c_str());
    if (!c.pass) all_pass = false;
  }
  return all_pass ? 0 : 1;
}
