#include "moobfgs/updates.hpp"

#include <algorithm>
#include <cmath>

#include "moobfgs/numerics.hpp"

namespace moobfgs {

std::pair<Matrix, UpdateDiagnostics> corrected_quantities(const CorrectionInputs& inp) {
  const auto m = inp.Y.rows();
  const double s_norm2 = inp.s.squaredNorm();
  if (!(s_norm2 > 1e-300)) throw DegenerateStep("corrected_quantities: step is numerically zero");
  if (inp.mu.size() != m || inp.grad_current.rows() != m) {
    throw std::invalid_argument("corrected_quantities: inconsistent objective counts");
  }

  const double weighted_grad_norm = (inp.grad_current.transpose() * inp.mu).norm();

  UpdateDiagnostics diag;
  diag.eta.resize(m);
  diag.r.resize(m);
  diag.gamma_dot_s.resize(m);

  Matrix Gamma(m, inp.Y.cols());
  for (Eigen::Index j = 0; j < m; ++j) {
    const double eta = inp.Y.row(j).dot(inp.s) / s_norm2;
    const double r = std::max(-eta, 0.0) + inp.vartheta * weighted_grad_norm;
    Gamma.row(j) = inp.Y.row(j) + r * inp.s.transpose();
    diag.eta(j) = eta;
    diag.r(j) = r;
    diag.gamma_dot_s(j) = Gamma.row(j).dot(inp.s);
  }
  return {std::move(Gamma), std::move(diag)};
}

Matrix bfgs_update(const Matrix& B, const Vector& s, const Vector& gamma) {
  const double gs = gamma.dot(s);
  if (!(gs > 0.0)) throw CurvatureViolation("bfgs_update: gamma's <= 0");
  const Vector Bs = B * s;
  const double sBs = s.dot(Bs);
  if (!(sBs > 0.0)) throw NotPositiveDefinite("bfgs_update: s'Bs <= 0");
  return B - (Bs * Bs.transpose()) / sBs + (gamma * gamma.transpose()) / gs;
}

double bfgs_wolfe_rho(double y_dot_s, double D_next_s, double g_dot_s) {
  if (y_dot_s > 0.0) return 1.0 / y_dot_s;
  return 1.0 / (D_next_s - g_dot_s);
}

Matrix bfgs_wolfe_update(const Matrix& B, const Vector& s, const Vector& y, double D_next_s,
                         double g_dot_s) {
  const double w = y.dot(s);
  const double rho = bfgs_wolfe_rho(w, D_next_s, g_dot_s);
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw CurvatureViolation("bfgs_wolfe_update: nonpositive scaling");
  }
  const double c = 1.0 / rho;
  const Vector Bs = B * s;
  const double sBs = s.dot(Bs);
  const double q = (c - w) * (c - w) + c * sBs;
  return B - (c * (Bs * Bs.transpose()) - sBs * (y * y.transpose())) / q +
         ((c - w) / q) * (Bs * y.transpose() + y * Bs.transpose());
}

Matrix cautious_update(const Matrix& B, const Vector& s, const Vector& y, double theta,
                       double epsilon, bool* applied) {
  const double ys = y.dot(s);
  const double threshold = epsilon * std::min(1.0, std::abs(theta));
  // At the threshold boundary y's can be zero; skip there to stay positive
  // definite.
  const bool update = (ys >= threshold) && (ys > 0.0);
  if (applied != nullptr) *applied = update;
  if (!update) return B;
  return bfgs_update(B, s, y);
}

double psi_diagnostic(const Matrix& B) {
  return B.trace() - CholeskyFactor(B).log_det();
}

}  // namespace moobfgs
