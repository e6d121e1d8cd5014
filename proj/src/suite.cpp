#include "moobfgs/suite.hpp"

#include <cmath>
#include <numbers>

namespace moobfgs {

namespace {

constexpr double kPi = std::numbers::pi;

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Problem make_jos1() {
  Problem p;
  p.name = "JOS1";
  p.n = 2;
  p.m = 2;
  p.convex = true;
  p.strongly_convex = true;
  p.lower = Vector::Constant(2, -10.0);
  p.upper = Vector::Constant(2, 10.0);
  p.objectives = [](const Vector& x) {
    const double n = static_cast<double>(x.size());
    Vector f(2);
    f(0) = x.squaredNorm() / n;
    f(1) = (x.array() - 2.0).matrix().squaredNorm() / n;
    return f;
  };
  p.jacobian = [](const Vector& x) {
    const double n = static_cast<double>(x.size());
    Matrix J(2, x.size());
    J.row(0) = (2.0 / n) * x.transpose();
    J.row(1) = (2.0 / n) * (x.array() - 2.0).matrix().transpose();
    return J;
  };
  return p;
}

Problem make_sp1() {
  Problem p;
  p.name = "SP1";
  p.n = 2;
  p.m = 2;
  p.convex = true;
  p.strongly_convex = true;
  p.lower = Vector::Constant(2, -10.0);
  p.upper = Vector::Constant(2, 10.0);
  p.objectives = [](const Vector& x) {
    const double d = x(0) - x(1);
    Vector f(2);
    f(0) = (x(0) - 1.0) * (x(0) - 1.0) + d * d;
    f(1) = (x(1) - 3.0) * (x(1) - 3.0) + d * d;
    return f;
  };
  p.jacobian = [](const Vector& x) {
    const double d = x(0) - x(1);
    Matrix J(2, 2);
    J(0, 0) = 2.0 * (x(0) - 1.0) + 2.0 * d;
    J(0, 1) = -2.0 * d;
    J(1, 0) = 2.0 * d;
    J(1, 1) = 2.0 * (x(1) - 3.0) - 2.0 * d;
    return J;
  };
  return p;
}

Problem make_ap2() {
  Problem p;
  p.name = "AP2";
  p.n = 1;
  p.m = 2;
  p.convex = true;
  p.strongly_convex = true;
  p.lower = Vector::Constant(1, -100.0);
  p.upper = Vector::Constant(1, 100.0);
  p.objectives = [](const Vector& x) {
    Vector f(2);
    f(0) = x(0) * x(0);
    f(1) = (x(0) - 1.0) * (x(0) - 1.0);
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix J(2, 1);
    J(0, 0) = 2.0 * x(0);
    J(1, 0) = 2.0 * (x(0) - 1.0);
    return J;
  };
  return p;
}

Problem make_bk1() {
  Problem p;
  p.name = "BK1";
  p.n = 2;
  p.m = 2;
  p.convex = true;
  p.strongly_convex = true;
  p.lower = Vector::Constant(2, -5.0);
  p.upper = Vector::Constant(2, 10.0);
  p.objectives = [](const Vector& x) {
    Vector f(2);
    f(0) = x.squaredNorm();
    f(1) = (x(0) - 5.0) * (x(0) - 5.0) + (x(1) - 5.0) * (x(1) - 5.0);
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix J(2, 2);
    J.row(0) = 2.0 * x.transpose();
    J(1, 0) = 2.0 * (x(0) - 5.0);
    J(1, 1) = 2.0 * (x(1) - 5.0);
    return J;
  };
  return p;
}

Problem make_mop2() {
  Problem p;
  p.name = "MOP2";
  p.n = 2;
  p.m = 2;
  p.convex = false;
  p.lower = Vector::Constant(2, -4.0);
  p.upper = Vector::Constant(2, 4.0);
  const double a = 1.0 / std::sqrt(2.0);
  p.objectives = [a](const Vector& x) {
    const double u = (x.array() - a).matrix().squaredNorm();
    const double v = (x.array() + a).matrix().squaredNorm();
    Vector f(2);
    f(0) = 1.0 - std::exp(-u);
    f(1) = 1.0 - std::exp(-v);
    return f;
  };
  p.jacobian = [a](const Vector& x) {
    const double u = (x.array() - a).matrix().squaredNorm();
    const double v = (x.array() + a).matrix().squaredNorm();
    Matrix J(2, 2);
    J.row(0) = std::exp(-u) * 2.0 * (x.array() - a).matrix().transpose();
    J.row(1) = std::exp(-v) * 2.0 * (x.array() + a).matrix().transpose();
    return J;
  };
  return p;
}

Problem make_dgo2() {
  Problem p;
  p.name = "DGO2";
  p.n = 1;
  p.m = 2;
  p.convex = true;
  p.strongly_convex = true;
  p.lower = Vector::Constant(1, -9.0);
  p.upper = Vector::Constant(1, 9.0);
  p.objectives = [](const Vector& x) {
    Vector f(2);
    f(0) = x(0) * x(0);
    f(1) = 9.0 - std::sqrt(81.0 - x(0) * x(0));
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix J(2, 1);
    J(0, 0) = 2.0 * x(0);
    J(1, 0) = x(0) / std::sqrt(81.0 - x(0) * x(0));
    return J;
  };
  return p;
}

Problem make_ff1() {
  Problem p;
  p.name = "FF1";
  p.n = 2;
  p.m = 2;
  p.convex = false;
  p.lower = Vector::Constant(2, -1.0);
  p.upper = Vector::Constant(2, 1.0);
  p.objectives = [](const Vector& x) {
    const double u = (x(0) - 1.0) * (x(0) - 1.0) + (x(1) + 1.0) * (x(1) + 1.0);
    const double v = (x(0) + 1.0) * (x(0) + 1.0) + (x(1) - 1.0) * (x(1) - 1.0);
    Vector f(2);
    f(0) = 1.0 - std::exp(-u);
    f(1) = 1.0 - std::exp(-v);
    return f;
  };
  p.jacobian = [](const Vector& x) {
    const double u = (x(0) - 1.0) * (x(0) - 1.0) + (x(1) + 1.0) * (x(1) + 1.0);
    const double v = (x(0) + 1.0) * (x(0) + 1.0) + (x(1) - 1.0) * (x(1) - 1.0);
    Matrix J(2, 2);
    J(0, 0) = std::exp(-u) * 2.0 * (x(0) - 1.0);
    J(0, 1) = std::exp(-u) * 2.0 * (x(1) + 1.0);
    J(1, 0) = std::exp(-v) * 2.0 * (x(0) + 1.0);
    J(1, 1) = std::exp(-v) * 2.0 * (x(1) - 1.0);
    return J;
  };
  return p;
}

Problem make_hil1() {
  Problem p;
  p.name = "Hil1";
  p.n = 2;
  p.m = 2;
  p.convex = false;
  p.lower = Vector::Constant(2, 0.0);
  p.upper = Vector::Constant(2, 1.0);
  const double c = 2.0 * kPi / 360.0;
  p.objectives = [c](const Vector& x) {
    const double a = c * (45.0 + 40.0 * std::sin(2.0 * kPi * x(0)) + 25.0 * std::sin(2.0 * kPi * x(1)));
    const double b = 1.0 + 0.5 * std::cos(2.0 * kPi * x(0));
    Vector f(2);
    f(0) = std::cos(a) * b;
    f(1) = std::sin(a) * b;
    return f;
  };
  p.jacobian = [c](const Vector& x) {
    const double a = c * (45.0 + 40.0 * std::sin(2.0 * kPi * x(0)) + 25.0 * std::sin(2.0 * kPi * x(1)));
    const double b = 1.0 + 0.5 * std::cos(2.0 * kPi * x(0));
    const double da0 = c * 40.0 * 2.0 * kPi * std::cos(2.0 * kPi * x(0));
    const double da1 = c * 25.0 * 2.0 * kPi * std::cos(2.0 * kPi * x(1));
    const double db0 = -kPi * std::sin(2.0 * kPi * x(0));
    Matrix J(2, 2);
    J(0, 0) = -std::sin(a) * da0 * b + std::cos(a) * db0;
    J(0, 1) = -std::sin(a) * da1 * b;
    J(1, 0) = std::cos(a) * da0 * b + std::sin(a) * db0;
    J(1, 1) = std::cos(a) * da1 * b;
    return J;
  };
  return p;
}

Problem make_lov1() {
  Problem p;
  p.name = "Lov1";
  p.n = 2;
  p.m = 2;
  p.convex = true;
  p.strongly_convex = true;
  p.lower = Vector::Constant(2, -5.0);
  p.upper = Vector::Constant(2, 10.0);
  p.objectives = [](const Vector& x) {
    Vector f(2);
    f(0) = 1.05 * x(0) * x(0) + 0.98 * x(1) * x(1);
    f(1) = 0.99 * (x(0) - 3.0) * (x(0) - 3.0) + 1.03 * (x(1) - 2.5) * (x(1) - 2.5);
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix J(2, 2);
    J(0, 0) = 2.0 * 1.05 * x(0);
    J(0, 1) = 2.0 * 0.98 * x(1);
    J(1, 0) = 2.0 * 0.99 * (x(0) - 3.0);
    J(1, 1) = 2.0 * 1.03 * (x(1) - 2.5);
    return J;
  };
  return p;
}

Problem make_mmr2() {
  Problem p;
  p.name = "MMR2";
  p.n = 2;
  p.m = 2;
  p.convex = false;
  p.lower = vec2(0.0, 0.0);
  p.upper = vec2(1.0, 1.0);
  p.objectives = [](const Vector& x) {
    const double g = 1.0 + x(1) * x(1);
    Vector f(2);
    f(0) = x(0) * x(0);
    f(1) = g - x(0) * x(0) / g;
    return f;
  };
  p.jacobian = [](const Vector& x) {
    const double g = 1.0 + x(1) * x(1);
    Matrix J(2, 2);
    J(0, 0) = 2.0 * x(0);
    J(0, 1) = 0.0;
    J(1, 0) = -2.0 * x(0) / g;
    J(1, 1) = 2.0 * x(1) * (1.0 + x(0) * x(0) / (g * g));
    return J;
  };
  return p;
}

Problem make_slcdt1() {
  Problem p;
  p.name = "SLCDT1";
  p.n = 2;
  p.m = 2;
  p.convex = false;
  p.lower = Vector::Constant(2, -1.5);
  p.upper = Vector::Constant(2, 1.5);
  const double lam = 0.85;
  p.objectives = [lam](const Vector& x) {
    const double u = x(0) + x(1);
    const double v = x(0) - x(1);
    const double su = std::sqrt(1.0 + u * u);
    const double sv = std::sqrt(1.0 + v * v);
    const double e = std::exp(-v * v);
    Vector f(2);
    f(0) = 0.5 * (su + sv + v) + lam * e;
    f(1) = 0.5 * (su + sv - v) + lam * e;
    return f;
  };
  p.jacobian = [lam](const Vector& x) {
    const double u = x(0) + x(1);
    const double v = x(0) - x(1);
    const double su = std::sqrt(1.0 + u * u);
    const double sv = std::sqrt(1.0 + v * v);
    const double e = std::exp(-v * v);
    const double pu = u / su;
    const double pv = v / sv;
    Matrix J(2, 2);
    J(0, 0) = 0.5 * (pu + pv + 1.0) - 2.0 * lam * v * e;
    J(0, 1) = 0.5 * (pu - pv - 1.0) + 2.0 * lam * v * e;
    J(1, 0) = 0.5 * (pu + pv - 1.0) - 2.0 * lam * v * e;
    J(1, 1) = 0.5 * (pu - pv + 1.0) + 2.0 * lam * v * e;
    return J;
  };
  return p;
}

Problem make_toi4() {
  Problem p;
  p.name = "Toi4";
  p.n = 4;
  p.m = 2;
  p.convex = true;
  p.lower = Vector::Constant(4, -5.0);
  p.upper = Vector::Constant(4, 5.0);
  p.objectives = [](const Vector& x) {
    Vector f(2);
    f(0) = x(0) * x(0) + x(1) * x(1) + 1.0;
    f(1) = 0.5 * ((x(0) - x(1)) * (x(0) - x(1)) + (x(2) - x(3)) * (x(2) - x(3))) + 1.0;
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix J(2, 4);
    J.setZero();
    J(0, 0) = 2.0 * x(0);
    J(0, 1) = 2.0 * x(1);
    J(1, 0) = x(0) - x(1);
    J(1, 1) = -(x(0) - x(1));
    J(1, 2) = x(2) - x(3);
    J(1, 3) = -(x(2) - x(3));
    return J;
  };
  return p;
}

}  // namespace

const std::vector<Problem>& problem_suite() {
  static const std::vector<Problem> suite = {
      make_jos1(), make_sp1(),  make_ap2(),  make_bk1(),    make_mop2(), make_dgo2(),
      make_ff1(),  make_hil1(), make_lov1(), make_mmr2(),   make_slcdt1(), make_toi4(),
  };
  return suite;
}

const Problem* find_problem(const std::string& name) {
  for (const auto& p : problem_suite()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Problem make_rosenbrock() {
  Problem p;
  p.name = "Rosenbrock";
  p.n = 2;
  p.m = 1;
  p.convex = false;
  p.lower = Vector::Constant(2, -2.0);
  p.upper = Vector::Constant(2, 2.0);
  p.objectives = [](const Vector& x) {
    const double t = x(1) - x(0) * x(0);
    Vector f(1);
    f(0) = 100.0 * t * t + (1.0 - x(0)) * (1.0 - x(0));
    return f;
  };
  p.jacobian = [](const Vector& x) {
    const double t = x(1) - x(0) * x(0);
    Matrix J(1, 2);
    J(0, 0) = -400.0 * x(0) * t - 2.0 * (1.0 - x(0));
    J(0, 1) = 200.0 * t;
    return J;
  };
  return p;
}

Problem make_scalar_quadratic() {
  Problem p;
  p.name = "ScalarQuadratic";
  p.n = 1;
  p.m = 1;
  p.convex = true;
  p.strongly_convex = true;
  p.lower = Vector::Constant(1, -10.0);
  p.upper = Vector::Constant(1, 10.0);
  p.objectives = [](const Vector& x) {
    Vector f(1);
    f(0) = 0.5 * x(0) * x(0);
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix J(1, 1);
    J(0, 0) = x(0);
    return J;
  };
  return p;
}

Problem make_convex_quadratic(int n, std::uint64_t seed) {
  // f(x) = 0.5 x'Ax - b'x with A = M'M + I for a random M.
  std::uint64_t state = seed;
  Matrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = 2.0 * uniform01(state) - 1.0;
  Matrix A = M.transpose() * M + Matrix::Identity(n, n);
  Vector b(n);
  for (int i = 0; i < n; ++i) b(i) = 2.0 * uniform01(state) - 1.0;

  Problem p;
  p.name = "ConvexQuadratic";
  p.n = n;
  p.m = 1;
  p.convex = true;
  p.strongly_convex = true;
  p.lower = Vector::Constant(n, -5.0);
  p.upper = Vector::Constant(n, 5.0);
  p.objectives = [A, b](const Vector& x) {
    Vector f(1);
    f(0) = 0.5 * x.dot(A * x) - b.dot(x);
    return f;
  };
  p.jacobian = [A, b](const Vector& x) {
    Matrix J(1, A.rows());
    J.row(0) = (A * x - b).transpose();
    return J;
  };
  return p;
}

}  // namespace moobfgs
