#include "moobfgs/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace moobfgs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_preconditions(const Vector& x, const Vector& d, double Dxd,
                         const WolfeParams& params) {
  if (x.size() != d.size()) throw std::invalid_argument("line search: size mismatch");
  if (!(Dxd < 0.0)) throw std::invalid_argument("line search: not a descent direction");
  if (!(params.rho > 0.0 && params.rho < 0.5)) throw std::invalid_argument("line search: rho out of range");
  if (!(params.sigma > params.rho && params.sigma < 1.0)) throw std::invalid_argument("line search: sigma out of range");
  if (!(params.alpha_max >= 1.0)) throw std::invalid_argument("line search: alpha_max must be >= 1");
}

/// Worst violation of sufficient decrease; <= 0 means the condition holds.
double merit(const Vector& F_trial, const Vector& F_x, double rho, double alpha, double Dxd) {
  if (!all_finite(F_trial)) return kInf;
  double worst = -kInf;
  for (Eigen::Index j = 0; j < F_x.size(); ++j) {
    worst = std::max(worst, F_trial(j) - (F_x(j) + rho * alpha * Dxd));
  }
  return worst;
}

/// Minimizer of the quadratic through (a, fa) with slope ga and (b, fb),
/// guarded to the central 80% of the bracket; bisection otherwise.
double interp_quadratic(double a, double fa, double ga, double b, double fb) {
  const double mid = 0.5 * (a + b);
  const double denom = fb - fa - ga * (b - a);
  if (!(std::abs(denom) > 0.0) || !std::isfinite(denom) || !std::isfinite(fb)) return mid;
  const double t = a - 0.5 * ga * (b - a) * (b - a) / denom;
  const double lo = std::min(a, b), hi = std::max(a, b);
  const double margin = 0.1 * (hi - lo);
  if (!std::isfinite(t) || t < lo + margin || t > hi - margin) return mid;
  return t;
}

struct TrialPoint {
  double alpha;
  Vector F;
  Matrix J;
  double psi;   // sufficient-decrease violation
  double curv;  // descent value along d at the trial point, +inf when non-finite
};

}  // namespace

bool wolfe_sufficient(const Vector& F_trial, const Vector& F_x, double rho, double alpha,
                      double Dxd) {
  for (Eigen::Index j = 0; j < F_x.size(); ++j) {
    if (!(F_trial(j) <= F_x(j) + rho * alpha * Dxd)) return false;
  }
  return true;
}

bool wolfe_curvature(const Matrix& J_trial, const Vector& d, double sigma, double Dxd) {
  return descent_value(J_trial, d) >= sigma * Dxd;
}

LineSearchResult wolfe_search(const Problem& p, EvalCounter& counter, const Vector& x,
                              const Vector& d, const Vector& F_x, double Dxd,
                              const WolfeParams& params) {
  check_preconditions(x, d, Dxd, params);

  int trials = 0;
  auto probe = [&](double alpha) {
    TrialPoint t;
    t.alpha = alpha;
    Evaluation ev = evaluate_raw(p, x + alpha * d, counter);
    ++trials;
    t.F = std::move(ev.F);
    t.J = std::move(ev.J);
    t.psi = merit(t.F, F_x, params.rho, alpha, Dxd);
    t.curv = all_finite(t.J) ? descent_value(t.J, d) : kInf;
    return t;
  };

  auto accept = [&](const TrialPoint& t) {
    LineSearchResult r;
    r.alpha = t.alpha;
    r.trials = trials;
    r.unit_step = (trials == 1 && t.alpha == 1.0);
    r.F_new = t.F;
    r.J_new = t.J;
    r.has_jacobian = true;
    return r;
  };

  auto satisfies = [&](const TrialPoint& t) {
    return all_finite(t.F) && all_finite(t.J) &&
           wolfe_sufficient(t.F, F_x, params.rho, t.alpha, Dxd) &&
           wolfe_curvature(t.J, d, params.sigma, Dxd);
  };

  // Sectioning phase: lo satisfies sufficient decrease, a valid step lies
  // between lo and hi.
  auto zoom = [&](double lo, double psi_lo, double curv_lo, double hi,
                  double psi_hi) -> LineSearchResult {
    while (trials < params.max_trials) {
      const double cand = interp_quadratic(lo, psi_lo, curv_lo - params.rho * Dxd, hi, psi_hi);
      TrialPoint t = probe(cand);
      if (satisfies(t)) return accept(t);
      if (!std::isfinite(t.psi) || t.psi > 0.0 || t.psi >= psi_lo) {
        hi = cand;
        psi_hi = t.psi;
      } else {
        if (t.curv * (hi - lo) >= 0.0) {
          hi = lo;
          psi_hi = psi_lo;
        }
        lo = cand;
        psi_lo = t.psi;
        curv_lo = t.curv;
      }
    }
    throw LineSearchFailed("step satisfying both conditions not found in " +
                           std::to_string(params.max_trials) + " trials");
  };

  double prev_alpha = 0.0;
  double prev_psi = 0.0;
  double prev_curv = Dxd;
  double alpha = 1.0;

  while (trials < params.max_trials) {
    TrialPoint t = probe(alpha);
    if (satisfies(t)) return accept(t);
    if (!std::isfinite(t.psi) || t.psi > 0.0 || (trials > 1 && t.psi >= prev_psi)) {
      return zoom(prev_alpha, prev_psi, prev_curv, alpha, t.psi);
    }
    // Sufficient decrease holds but curvature does not; the slope is still
    // steeply negative, so expand.
    if (alpha >= params.alpha_max) break;
    prev_alpha = alpha;
    prev_psi = t.psi;
    prev_curv = t.curv;
    alpha = std::min(2.0 * alpha, params.alpha_max);
  }
  throw LineSearchFailed("step satisfying both conditions not found in " +
                         std::to_string(params.max_trials) + " trials");
}

LineSearchResult armijo_search(const Problem& p, EvalCounter& counter, const Vector& x,
                               const Vector& d, const Vector& F_x, double Dxd,
                               const WolfeParams& params) {
  check_preconditions(x, d, Dxd, params);

  const double dpsi0 = (1.0 - params.rho) * Dxd;
  double alpha = 1.0;
  for (int trials = 1; trials <= params.max_trials; ++trials) {
    const Vector F_trial = evaluate_objectives_raw(p, x + alpha * d, counter);
    if (all_finite(F_trial) && wolfe_sufficient(F_trial, F_x, params.rho, alpha, Dxd)) {
      LineSearchResult r;
      r.alpha = alpha;
      r.trials = trials;
      r.unit_step = (trials == 1 && alpha == 1.0);
      r.F_new = F_trial;
      r.has_jacobian = false;
      return r;
    }
    const double psi_alpha = merit(F_trial, F_x, params.rho, alpha, Dxd);
    double next = 0.5 * alpha;
    if (std::isfinite(psi_alpha)) {
      // Quadratic through psi(0) = 0 with slope dpsi0 and psi(alpha).
      const double denom = psi_alpha - dpsi0 * alpha;
      if (denom > 0.0) next = -0.5 * dpsi0 * alpha * alpha / denom;
    }
    alpha = std::clamp(next, 0.1 * alpha, 0.9 * alpha);
  }
  throw LineSearchFailed("sufficient decrease not reached in " +
                         std::to_string(params.max_trials) + " trials");
}

}  // namespace moobfgs
