#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "moobfgs/common.hpp"

namespace moobfgs {

/// Per-run evaluation counters.
struct EvalCounter {
  long f_evals = 0;
  long jf_evals = 0;
};

/// A smooth vector-valued objective with its Jacobian and a start box.
struct Problem {
  std::string name;
  int n = 0;  ///< decision dimension
  int m = 0;  ///< objective count
  std::function<Vector(const Vector&)> objectives;  ///< x -> F(x) in R^m
  std::function<Matrix(const Vector&)> jacobian;    ///< x -> JF(x), m x n
  Vector lower;  ///< start box, per coordinate
  Vector upper;
  bool convex = false;
  bool strongly_convex = false;
};

struct Evaluation {
  Vector F;
  Matrix J;
};

/// Evaluates objectives and Jacobian, bumping the counters.
/// Throws NonFiniteValue when any output entry is NaN or infinite.
Evaluation evaluate(const Problem& p, const Vector& x, EvalCounter& counter);

/// Objectives only (used by Armijo-type trials). Counts one F evaluation.
/// Non-finite entries are returned as-is; callers decide how to react.
Vector evaluate_objectives_raw(const Problem& p, const Vector& x, EvalCounter& counter);

/// Objectives and Jacobian without the finiteness check.
Evaluation evaluate_raw(const Problem& p, const Vector& x, EvalCounter& counter);

/// splitmix64 step; the seed-stable generator used for all sampling.
std::uint64_t splitmix64(std::uint64_t& state);

/// Uniform double in [0, 1) from one splitmix64 output.
double uniform01(std::uint64_t& state);

/// Uniform sample in the start box; identical bits for identical seeds.
Vector random_start(const Problem& p, std::uint64_t seed);

}  // namespace moobfgs
