#pragma once

#include "moobfgs/common.hpp"

namespace moobfgs {

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
///
/// The factorization fails with NotPositiveDefinite when a pivot falls at or
/// below 1e-14 times the largest diagonal entry of the input, which separates
/// genuine indefiniteness from roundoff.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const Matrix& A);

  /// Solves A z = b via forward and back substitution.
  Vector solve(const Vector& b) const;

  /// log(det A), summed from the factor diagonal.
  double log_det() const;

  const Matrix& lower() const { return L_; }
  int dim() const { return static_cast<int>(L_.rows()); }

 private:
  Matrix L_;
};

/// Solves A z = b for symmetric positive definite A.
Vector solve_spd(const Matrix& A, const Vector& b);

/// Euclidean projection onto the probability simplex
/// { w : sum w_i = 1, w_i >= 0 }, by sort and threshold.
Vector project_simplex(const Vector& v);

}  // namespace moobfgs
