#include "moobfgs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace moobfgs {

CholeskyFactor::CholeskyFactor(const Matrix& A) {
  const auto n = A.rows();
  if (n < 1 || A.cols() != n) {
    throw std::invalid_argument("CholeskyFactor: square matrix of dimension >= 1 required");
  }
  const double max_diag = A.diagonal().maxCoeff();
  const double pivot_tol = 1e-14 * max_diag;

  L_ = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = A(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= L_(j, k) * L_(j, k);
    if (!(pivot > pivot_tol)) {
      throw NotPositiveDefinite("Cholesky pivot below tolerance at column " + std::to_string(j));
    }
    const double ljj = std::sqrt(pivot);
    L_(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = A(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L_(i, k) * L_(j, k);
      L_(i, j) = s / ljj;
    }
  }
}

Vector CholeskyFactor::solve(const Vector& b) const {
  const auto n = L_.rows();
  if (b.size() != n) throw std::invalid_argument("CholeskyFactor::solve: size mismatch");
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = b(i);
    for (Eigen::Index k = 0; k < i; ++k) s -= L_(i, k) * y(k);
    y(i) = s / L_(i, i);
  }
  Vector z(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double s = y(i);
    for (Eigen::Index k = i + 1; k < n; ++k) s -= L_(k, i) * z(k);
    z(i) = s / L_(i, i);
  }
  return z;
}

double CholeskyFactor::log_det() const {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < L_.rows(); ++i) acc += std::log(L_(i, i));
  return 2.0 * acc;
}

Vector solve_spd(const Matrix& A, const Vector& b) { return CholeskyFactor(A).solve(b); }

Vector project_simplex(const Vector& v) {
  const auto m = v.size();
  if (m < 1) throw std::invalid_argument("project_simplex: empty input");

  // Inputs already on the simplex pass through untouched, which makes the
  // projection exactly idempotent.
  if (v.minCoeff() >= 0.0) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) s += v(i);
    if (std::abs(s - 1.0) <= 1e-15) return v;
  }

  std::vector<double> u(v.data(), v.data() + m);
  std::stable_sort(u.begin(), u.end(), std::greater<double>());

  double css = 0.0;
  double tau = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    css += u[static_cast<size_t>(k)];
    const double t = (css - 1.0) / static_cast<double>(k + 1);
    if (u[static_cast<size_t>(k)] - t > 0.0) tau = t;
  }

  Vector out(m);
  for (Eigen::Index i = 0; i < m; ++i) out(i) = std::max(v(i) - tau, 0.0);
  return out;
}

}  // namespace moobfgs
