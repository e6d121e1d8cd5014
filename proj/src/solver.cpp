#include "moobfgs/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "moobfgs/numerics.hpp"

namespace moobfgs {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::GlobalBFGS: return "global-bfgs";
    case Variant::BFGSWolfe: return "bfgs-wolfe";
    case Variant::CautiousBFGSArmijo: return "cautious-bfgs-armijo";
  }
  return "unknown";
}

bool variant_from_string(const std::string& s, Variant& out) {
  if (s == "global-bfgs") { out = Variant::GlobalBFGS; return true; }
  if (s == "bfgs-wolfe") { out = Variant::BFGSWolfe; return true; }
  if (s == "cautious-bfgs-armijo") { out = Variant::CautiousBFGSArmijo; return true; }
  return false;
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::MaxIters: return "MaxIters";
    case RunStatus::LineSearchFailed: return "LineSearchFailed";
    case RunStatus::SubproblemStalled: return "SubproblemStalled";
    case RunStatus::NonFiniteValue: return "NonFiniteValue";
  }
  return "unknown";
}

void validate(const SolverConfig& cfg) {
  if (!(cfg.rho > 0.0 && cfg.rho < 0.5)) throw std::invalid_argument("rho must lie in (0, 1/2)");
  if (!(cfg.sigma > cfg.rho && cfg.sigma < 1.0)) throw std::invalid_argument("sigma must lie in (rho, 1)");
  if (!(cfg.vartheta_min > 0.0 && cfg.vartheta_min <= cfg.vartheta_max)) {
    throw std::invalid_argument("vartheta bounds must satisfy 0 < min <= max");
  }
  if (!(cfg.vartheta >= cfg.vartheta_min && cfg.vartheta <= cfg.vartheta_max)) {
    throw std::invalid_argument("vartheta must lie in [vartheta_min, vartheta_max]");
  }
  if (!(cfg.epsilon_cautious > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(cfg.theta_tol > 0.0)) throw std::invalid_argument("theta tolerance must be positive");
  if (cfg.max_iters < 0) throw std::invalid_argument("max iterations must be nonnegative");
  if (!(cfg.alpha_max >= 1.0)) throw std::invalid_argument("alpha_max must be >= 1");
  if (cfg.ls_max_trials < 1) throw std::invalid_argument("line-search trials must be >= 1");
}

namespace {

bool hessians_factorizable(const HessianSet& H) {
  for (const auto& B : H.B) {
    try {
      CholeskyFactor chol(B);
    } catch (const NotPositiveDefinite&) {
      return false;
    }
  }
  return true;
}

}  // namespace

RunResult run(const Problem& p, const Vector& x0, const SolverConfig& cfg) {
  validate(cfg);
  const auto t_start = std::chrono::steady_clock::now();

  RunResult result;
  EvalCounter counter;

  auto finish = [&](RunStatus status, const Vector& x, const Vector& F, double theta,
                    int iters, const std::string& msg = "") {
    result.status = status;
    result.x = x;
    result.F = F;
    result.theta = theta;
    result.iterations = iters;
    result.f_evals = counter.f_evals;
    result.jf_evals = counter.jf_evals;
    result.message = msg;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
  };

  if (x0.size() != p.n) {
    return finish(RunStatus::NonFiniteValue, x0, Vector(), 0.0, 0, "start has wrong dimension");
  }

  Evaluation ev = evaluate_raw(p, x0, counter);
  if (!all_finite(ev.F) || !all_finite(ev.J)) {
    return finish(RunStatus::NonFiniteValue, x0, ev.F, 0.0, 0, "non-finite objective at start");
  }

  Vector x = x0;
  HessianSet H = HessianSet::identity(p.n, p.m);
  WolfeParams ls_params{cfg.rho, cfg.sigma, cfg.alpha_max, cfg.ls_max_trials};
  Vector warm;
  double last_theta = std::numeric_limits<double>::quiet_NaN();

  for (int k = 0;; ++k) {
    DirectionSolution sol;
    try {
      sol = solve_direction(ev.J, H, cfg.subproblem,
                            (cfg.warm_start_lambda && warm.size() == p.m) ? &warm : nullptr);
    } catch (const std::exception& e) {
      return finish(RunStatus::SubproblemStalled, x, ev.F, last_theta, k, e.what());
    }
    last_theta = sol.theta;
    if (cfg.warm_start_lambda) warm = sol.lambda;

    IterationRecord rec;
    rec.k = k;
    rec.theta = sol.theta;
    rec.d_norm = sol.d.norm();
    rec.f_evals = counter.f_evals;
    rec.jf_evals = counter.jf_evals;
    if (cfg.trace >= TraceLevel::Basic) {
      rec.x = x;
      rec.F = ev.F;
    }
    if (cfg.trace == TraceLevel::Full) {
      rec.d = sol.d;
      rec.d_sd_norm = solve_steepest(ev.J, cfg.subproblem).d.norm();
    }

    if (std::abs(sol.theta) <= cfg.theta_tol) {
      if (cfg.trace >= TraceLevel::Basic) result.trace.push_back(std::move(rec));
      return finish(RunStatus::Converged, x, ev.F, sol.theta, k);
    }
    if (k >= cfg.max_iters) {
      if (cfg.trace >= TraceLevel::Basic) result.trace.push_back(std::move(rec));
      return finish(RunStatus::MaxIters, x, ev.F, sol.theta, k);
    }

    const double Dxd = descent_value(ev.J, sol.d);
    LineSearchResult ls;
    try {
      if (cfg.variant == Variant::CautiousBFGSArmijo) {
        ls = armijo_search(p, counter, x, sol.d, ev.F, Dxd, ls_params);
      } else {
        ls = wolfe_search(p, counter, x, sol.d, ev.F, Dxd, ls_params);
      }
    } catch (const LineSearchFailed& e) {
      if (cfg.trace >= TraceLevel::Basic) result.trace.push_back(std::move(rec));
      return finish(RunStatus::LineSearchFailed, x, ev.F, sol.theta, k, e.what());
    } catch (const std::exception& e) {
      if (cfg.trace >= TraceLevel::Basic) result.trace.push_back(std::move(rec));
      return finish(RunStatus::NonFiniteValue, x, ev.F, sol.theta, k, e.what());
    }

    const Vector x_next = x + ls.alpha * sol.d;
    Evaluation ev_next;
    if (ls.has_jacobian) {
      ev_next.F = ls.F_new;
      ev_next.J = ls.J_new;
    } else {
      ev_next.F = ls.F_new;
      ev_next.J = p.jacobian(x_next);
      ++counter.jf_evals;
      if (!all_finite(ev_next.J)) {
        if (cfg.trace >= TraceLevel::Basic) result.trace.push_back(std::move(rec));
        return finish(RunStatus::NonFiniteValue, x, ev.F, sol.theta, k,
                      "non-finite Jacobian at accepted point");
      }
    }

    const Vector s = x_next - x;
    const Matrix Y = ev_next.J - ev.J;

    try {
      switch (cfg.variant) {
        case Variant::GlobalBFGS: {
          CorrectionInputs inp;
          inp.s = s;
          inp.Y = Y;
          inp.vartheta = cfg.vartheta;
          inp.grad_current = ev.J;
          if (cfg.r_choice == RChoice::Choice2) {
            inp.mu = sol.lambda;
          } else {
            inp.mu = solve_steepest(ev.J, cfg.subproblem).lambda;
          }
          auto [Gamma, diag] = corrected_quantities(inp);
          if (cfg.force_r_zero) {
            Gamma = Y;
            diag.r.setZero();
            for (Eigen::Index j = 0; j < Y.rows(); ++j) diag.gamma_dot_s(j) = Y.row(j).dot(s);
          }
          for (int j = 0; j < p.m; ++j) {
            H.B[static_cast<size_t>(j)] =
                bfgs_update(H.B[static_cast<size_t>(j)], s, Gamma.row(j).transpose());
          }
          if (cfg.trace == TraceLevel::Full) {
            rec.gamma_dot_s = diag.gamma_dot_s;
            rec.r = diag.r;
          }
          break;
        }
        case Variant::BFGSWolfe: {
          const double D_next_s = descent_value(ev_next.J, s);
          for (int j = 0; j < p.m; ++j) {
            const double g_dot_s = ev.J.row(j).dot(s);
            H.B[static_cast<size_t>(j)] = bfgs_wolfe_update(H.B[static_cast<size_t>(j)], s,
                                                            Y.row(j).transpose(), D_next_s,
                                                            g_dot_s);
          }
          break;
        }
        case Variant::CautiousBFGSArmijo: {
          for (int j = 0; j < p.m; ++j) {
            H.B[static_cast<size_t>(j)] = cautious_update(
                H.B[static_cast<size_t>(j)], s, Y.row(j).transpose(), sol.theta,
                cfg.epsilon_cautious);
          }
          break;
        }
      }
    } catch (const std::exception& e) {
      if (cfg.trace >= TraceLevel::Basic) result.trace.push_back(std::move(rec));
      return finish(RunStatus::NonFiniteValue, x, ev.F, sol.theta, k, e.what());
    }

    rec.alpha = ls.alpha;
    rec.unit_step = ls.unit_step;
    rec.f_evals = counter.f_evals;
    rec.jf_evals = counter.jf_evals;
    if (cfg.trace == TraceLevel::Full) {
      rec.spd_ok = hessians_factorizable(H);
      rec.psi.resize(p.m);
      for (int j = 0; j < p.m; ++j) rec.psi(j) = psi_diagnostic(H.B[static_cast<size_t>(j)]);
    }
    if (cfg.trace >= TraceLevel::Basic) result.trace.push_back(std::move(rec));

    x = x_next;
    ev = std::move(ev_next);
  }
}

std::uint64_t start_seed(std::uint64_t seed, int index) {
  std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1));
  return splitmix64(state);
}

std::vector<RunResult> run_multistart(const Problem& p, int n_starts, std::uint64_t seed,
                                      const SolverConfig& cfg, int jobs) {
  if (n_starts < 1) throw std::invalid_argument("run_multistart: n_starts must be >= 1");
  std::vector<RunResult> results(static_cast<size_t>(n_starts));

  auto work = [&](int begin, int stride) {
    for (int i = begin; i < n_starts; i += stride) {
      const Vector x0 = random_start(p, start_seed(seed, i));
      results[static_cast<size_t>(i)] = run(p, x0, cfg);
    }
  };

  const int workers = std::max(1, std::min(jobs, n_starts));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace moobfgs
