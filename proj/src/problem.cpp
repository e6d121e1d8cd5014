#include "moobfgs/problem.hpp"

namespace moobfgs {

Evaluation evaluate_raw(const Problem& p, const Vector& x, EvalCounter& counter) {
  Evaluation ev;
  ev.F = p.objectives(x);
  ev.J = p.jacobian(x);
  ++counter.f_evals;
  ++counter.jf_evals;
  return ev;
}

Vector evaluate_objectives_raw(const Problem& p, const Vector& x, EvalCounter& counter) {
  ++counter.f_evals;
  return p.objectives(x);
}

Evaluation evaluate(const Problem& p, const Vector& x, EvalCounter& counter) {
  if (x.size() != p.n) throw std::invalid_argument("evaluate: point has wrong dimension");
  Evaluation ev = evaluate_raw(p, x, counter);
  if (!all_finite(ev.F) || !all_finite(ev.J)) {
    throw NonFiniteValue("evaluate: non-finite value on problem " + p.name);
  }
  return ev;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

Vector random_start(const Problem& p, std::uint64_t seed) {
  std::uint64_t state = seed;
  Vector x(p.n);
  for (int i = 0; i < p.n; ++i) {
    const double u = uniform01(state);
    x(i) = p.lower(i) + u * (p.upper(i) - p.lower(i));
  }
  return x;
}

}  // namespace moobfgs
