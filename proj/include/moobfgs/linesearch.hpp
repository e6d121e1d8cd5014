#pragma once

#include "moobfgs/problem.hpp"
#include "moobfgs/subproblem.hpp"

namespace moobfgs {

struct WolfeParams {
  double rho = 1e-4;       ///< sufficient-decrease coefficient, in (0, 1/2)
  double sigma = 0.1;      ///< curvature coefficient, in (rho, 1)
  double alpha_max = 100.0;
  int max_trials = 50;
};

struct LineSearchResult {
  double alpha = 0.0;
  int trials = 0;
  bool unit_step = false;  ///< whether alpha = 1 passed on the first trial
  Vector F_new;            ///< objectives at the accepted point
  Matrix J_new;            ///< Jacobian at the accepted point (empty for Armijo)
  bool has_jacobian = false;
};

/// Componentwise sufficient decrease: F_j(x+ad) <= F_j(x) + rho*a*Dxd for all j.
bool wolfe_sufficient(const Vector& F_trial, const Vector& F_x, double rho, double alpha,
                      double Dxd);

/// Curvature along the step: max_j grad_j(x+ad)'d >= sigma*Dxd.
bool wolfe_curvature(const Matrix& J_trial, const Vector& d, double sigma, double Dxd);

/// Finds a step satisfying both conditions above, trying alpha = 1 first,
/// expanding up to alpha_max and then sectioning the bracket.
LineSearchResult wolfe_search(const Problem& p, EvalCounter& counter, const Vector& x,
                              const Vector& d, const Vector& F_x, double Dxd,
                              const WolfeParams& params);

/// Backtracking search for the sufficient-decrease condition only.
LineSearchResult armijo_search(const Problem& p, EvalCounter& counter, const Vector& x,
                               const Vector& d, const Vector& F_x, double Dxd,
                               const WolfeParams& params);

}  // namespace moobfgs
