#pragma once

#include "moobfgs/common.hpp"

namespace moobfgs {

/// Per-objective quantities produced while preparing an update.
struct UpdateDiagnostics {
  Vector eta;          ///< y_j's / ||s||^2
  Vector r;            ///< nonnegative curvature corrections
  Vector gamma_dot_s;  ///< gamma_j's, positive away from critical points
};

struct CorrectionInputs {
  Vector s;              ///< accepted step
  Matrix Y;              ///< rows are the gradient differences y_j'
  Vector mu;             ///< simplex weights for the correction magnitude
  double vartheta = 0.1; ///< correction coefficient
  Matrix grad_current;   ///< rows are the gradients at the pre-step point
};

/// Corrected difference vectors gamma_j = y_j + r_j s with
/// r_j = max(-eta_j, 0) + vartheta * || sum_i mu_i grad_i ||, which keeps
/// gamma_j's positive without convexity.
std::pair<Matrix, UpdateDiagnostics> corrected_quantities(const CorrectionInputs& inp);

/// Rank-two quasi-Newton update with the corrected difference vector:
/// B+ = B - B s s'B / s'Bs + gamma gamma' / gamma's.
Matrix bfgs_update(const Matrix& B, const Vector& s, const Vector& gamma);

/// Scaling factor for the inverse-form update below; the fallback branch is
/// positive whenever the step satisfied the curvature condition.
double bfgs_wolfe_rho(double y_dot_s, double D_next_s, double g_dot_s);

/// Direct form of the inverse update H+ = (I - rho s y')H(I - rho y s') + rho s s',
/// defined for any rho > 0; coincides with bfgs_update when rho = 1/y's > 0.
Matrix bfgs_wolfe_update(const Matrix& B, const Vector& s, const Vector& y, double D_next_s,
                         double g_dot_s);

/// Standard update guarded by the criticality-scaled curvature threshold
/// y's >= epsilon * min(1, |theta|); returns B unchanged when skipped.
Matrix cautious_update(const Matrix& B, const Vector& s, const Vector& y, double theta,
                       double epsilon, bool* applied = nullptr);

/// trace(B) - ln(det(B)); at least n for positive definite B.
double psi_diagnostic(const Matrix& B);

}  // namespace moobfgs
