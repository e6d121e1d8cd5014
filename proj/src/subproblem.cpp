#include "moobfgs/subproblem.hpp"

#include <algorithm>
#include <cmath>

#include "moobfgs/numerics.hpp"

namespace moobfgs {

namespace {

constexpr double kZeroDirectionTol = 1e-12;

struct DualState {
  double phi = 0.0;
  Vector d;     // minimizer of the weighted model, -B(w)^{-1} g(w)
  Vector Bd;    // B(w) d, kept for the optimal-value formula
  Vector grad;  // dual gradient: per-objective model values at d
};

Matrix mix_hessians(const HessianSet& H, const Vector& w) {
  Matrix Bw = w(0) * H.B[0];
  for (int j = 1; j < H.count(); ++j) Bw += w(j) * H.B[static_cast<size_t>(j)];
  return Bw;
}

DualState eval_dual(const Matrix& G, const HessianSet& H, const Vector& w) {
  const int m = static_cast<int>(G.rows());
  DualState st;
  const Matrix Bw = mix_hessians(H, w);
  const Vector gw = G.transpose() * w;
  CholeskyFactor chol(Bw);
  st.d = -chol.solve(gw);
  st.Bd = Bw * st.d;
  st.grad.resize(m);
  for (int j = 0; j < m; ++j) {
    st.grad(j) = G.row(j).dot(st.d) + 0.5 * st.d.dot(H.B[static_cast<size_t>(j)] * st.d);
  }
  st.phi = w.dot(st.grad);
  return st;
}

double pg_norm(const Vector& w, const Vector& grad) {
  return (project_simplex(w + grad) - w).norm();
}

/// Equalizes the dual gradient over the active support with a few damped
/// Newton rounds. Steps that fail to improve phi are rejected.
void polish(const Matrix& G, const HessianSet& H, Vector& w, DualState& st, int rounds) {
  const int m = static_cast<int>(G.rows());
  for (int round = 0; round < rounds; ++round) {
    std::vector<int> support;
    for (int j = 0; j < m; ++j)
      if (w(j) > 1e-9) support.push_back(j);
    const int s = static_cast<int>(support.size());
    if (s == 0) return;

    const Matrix Bw = mix_hessians(H, w);
    CholeskyFactor chol(Bw);

    // v_j = g_j + B_j d; the dual Hessian on the support is -V' B(w)^{-1} V.
    Matrix V(G.cols(), s);
    for (int c = 0; c < s; ++c) {
      const int j = support[static_cast<size_t>(c)];
      V.col(c) = G.row(j).transpose() + H.B[static_cast<size_t>(j)] * st.d;
    }
    Matrix W(G.cols(), s);
    for (int c = 0; c < s; ++c) W.col(c) = chol.solve(V.col(c));
    const Matrix Hphi = -(V.transpose() * W);

    // KKT system: Hphi * delta - nu * 1 = -grad_S, sum(delta) = 0.
    Matrix K = Matrix::Zero(s + 1, s + 1);
    K.topLeftCorner(s, s) = Hphi;
    K.topRightCorner(s, 1).setConstant(-1.0);
    K.bottomLeftCorner(1, s).setConstant(1.0);
    Vector rhs = Vector::Zero(s + 1);
    for (int c = 0; c < s; ++c) rhs(c) = -st.grad(support[static_cast<size_t>(c)]);

    Eigen::FullPivLU<Matrix> lu(K);
    if (!lu.isInvertible()) return;
    const Vector sol = lu.solve(rhs);
    if (!sol.allFinite()) return;

    // Damp so the multipliers stay nonnegative.
    double step = 1.0;
    for (int c = 0; c < s; ++c) {
      const double delta = sol(c);
      const double wj = w(support[static_cast<size_t>(c)]);
      if (delta < 0.0 && wj + step * delta < 0.0) step = std::min(step, -wj / delta);
    }
    if (!(step > 0.0)) return;

    Vector w_trial = w;
    for (int c = 0; c < s; ++c) {
      const int j = support[static_cast<size_t>(c)];
      w_trial(j) = std::max(w(j) + step * sol(c), 0.0);
    }
    w_trial = project_simplex(w_trial);

    DualState trial = eval_dual(G, H, w_trial);
    if (trial.phi < st.phi - 1e-12 * (1.0 + std::abs(st.phi))) return;
    w = w_trial;
    st = trial;
  }
}

}  // namespace

DirectionSolution solve_direction(const Matrix& G, const HessianSet& H,
                                  const SubproblemOptions& opts, const Vector* warm_lambda) {
  const int m = static_cast<int>(G.rows());
  const int n = static_cast<int>(G.cols());
  if (m < 1) throw std::invalid_argument("solve_direction: need at least one objective");
  if (H.count() != m || H.dim() != n) {
    throw std::invalid_argument("solve_direction: model matrices do not match the gradients");
  }

  DirectionSolution out;

  if (m == 1) {
    CholeskyFactor chol(H.B[0]);
    out.d = -chol.solve(G.row(0).transpose());
    out.lambda = Vector::Ones(1);
    if (out.d.norm() <= kZeroDirectionTol) {
      out.d.setZero();
      out.theta = 0.0;
    } else {
      out.theta = -0.5 * out.d.dot(H.B[0] * out.d);
    }
    return out;
  }

  double max_grad_norm = 0.0;
  for (int j = 0; j < m; ++j) max_grad_norm = std::max(max_grad_norm, G.row(j).norm());
  const double tol = opts.tol_factor * (1.0 + max_grad_norm);

  Vector w;
  if (warm_lambda != nullptr && warm_lambda->size() == m && warm_lambda->allFinite()) {
    w = project_simplex(*warm_lambda);
  } else {
    w = Vector::Constant(m, 1.0 / static_cast<double>(m));
  }

  DualState cur = eval_dual(G, H, w);
  Vector w_prev, grad_prev;
  double step = 1.0;
  bool converged = false;
  int it = 0;

  for (; it < opts.max_iters; ++it) {
    if (pg_norm(w, cur.grad) <= tol) {
      converged = true;
      break;
    }

    if (it > 0) {
      // Barzilai-Borwein step; dual curvature along the move is nonpositive.
      const Vector dw = w - w_prev;
      const Vector dg = cur.grad - grad_prev;
      const double den = dw.dot(dg);
      if (den < -1e-300) step = std::clamp(dw.squaredNorm() / (-den), 1e-10, 1e10);
    }

    bool accepted = false;
    double t = step;
    for (int bt = 0; bt < 60; ++bt) {
      const Vector cand = project_simplex(w + t * cur.grad);
      const Vector move = cand - w;
      if (move.norm() == 0.0) break;
      DualState trial = eval_dual(G, H, cand);
      if (trial.phi >= cur.phi + 1e-4 * cur.grad.dot(move)) {
        w_prev = w;
        grad_prev = cur.grad;
        w = cand;
        cur = trial;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // no ascent possible at this precision
  }

  polish(G, H, w, cur, opts.polish_rounds);

  if (!converged && pg_norm(w, cur.grad) > tol) {
    throw SubproblemStalled("dual ascent did not reach tolerance in " +
                            std::to_string(opts.max_iters) + " iterations");
  }

  out.lambda = w;
  out.dual_iters = it;
  out.d = cur.d;
  if (out.d.norm() <= kZeroDirectionTol) {
    out.d.setZero();
    out.theta = 0.0;
  } else {
    out.theta = -0.5 * cur.d.dot(cur.Bd);
  }
  return out;
}

SteepestDescentSolution solve_steepest(const Matrix& G, const SubproblemOptions& opts) {
  const HessianSet id = HessianSet::identity(static_cast<int>(G.cols()),
                                             static_cast<int>(G.rows()));
  DirectionSolution sol = solve_direction(G, id, opts);
  // Reconstruct from the multipliers so the stated identity holds exactly.
  SteepestDescentSolution sd;
  sd.lambda = sol.lambda;
  sd.d = -(G.transpose() * sol.lambda);
  if (sd.d.norm() <= kZeroDirectionTol) sd.d.setZero();
  return sd;
}

double descent_value(const Matrix& G, const Vector& d) {
  if (G.cols() != d.size()) throw std::invalid_argument("descent_value: size mismatch");
  double best = G.row(0).dot(d);
  for (Eigen::Index j = 1; j < G.rows(); ++j) best = std::max(best, G.row(j).dot(d));
  return best;
}

}  // namespace moobfgs
