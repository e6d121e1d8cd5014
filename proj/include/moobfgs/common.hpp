#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace moobfgs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when a matrix expected to be symmetric positive definite is not.
struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an evaluation produces NaN or infinity.
struct NonFiniteValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when the dual ascent on the direction subproblem fails to reach
/// its tolerance within the iteration budget.
struct SubproblemStalled : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a line search exhausts its trial budget.
struct LineSearchFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a quasi-Newton update receives nonpositive curvature.
struct CurvatureViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a step vector is too small to define update quantities.
struct DegenerateStep : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace moobfgs
