#pragma once

#include <optional>
#include <vector>

#include "moobfgs/common.hpp"

namespace moobfgs {

/// One positive definite model matrix per objective.
struct HessianSet {
  std::vector<Matrix> B;

  static HessianSet identity(int n, int m) {
    HessianSet h;
    h.B.assign(static_cast<size_t>(m), Matrix::Identity(n, n));
    return h;
  }
  int count() const { return static_cast<int>(B.size()); }
  int dim() const { return B.empty() ? 0 : static_cast<int>(B.front().rows()); }
};

struct SubproblemOptions {
  double tol_factor = 1e-10;  ///< stop at pg-norm <= tol_factor * (1 + max_j ||g_j||)
  int max_iters = 500;
  int polish_rounds = 3;  ///< active-support Newton refinement after the ascent
};

/// Search direction, model optimal value, and simplex multipliers.
struct DirectionSolution {
  Vector d;
  double theta = 0.0;
  Vector lambda;
  int dual_iters = 0;
};

struct SteepestDescentSolution {
  Vector d;
  Vector lambda;
};

/// Solves min_d max_j g_j'd + 0.5 d'B_j d by maximizing the concave dual
/// phi(w) = -0.5 g(w)' B(w)^{-1} g(w) over the simplex. Rows of `gradients`
/// are the per-objective gradients g_j'.
DirectionSolution solve_direction(const Matrix& gradients, const HessianSet& hessians,
                                  const SubproblemOptions& opts = {},
                                  const Vector* warm_lambda = nullptr);

/// Identity-model special case: -d is the minimum-norm point of the convex
/// hull of the gradients.
SteepestDescentSolution solve_steepest(const Matrix& gradients,
                                       const SubproblemOptions& opts = {});

/// max_j g_j'd, the joint directional derivative bound.
double descent_value(const Matrix& gradients, const Vector& d);

}  // namespace moobfgs
