#pragma once

#include <vector>

#include "moobfgs/problem.hpp"

namespace moobfgs {

/// The curated multiobjective test suite (static registry, addressable by name).
const std::vector<Problem>& problem_suite();

/// Looks a problem up by name; nullptr when absent.
const Problem* find_problem(const std::string& name);

/// Scalar regression fixtures (not part of the registry).
Problem make_rosenbrock();
Problem make_scalar_quadratic();
Problem make_convex_quadratic(int n, std::uint64_t seed);

}  // namespace moobfgs
