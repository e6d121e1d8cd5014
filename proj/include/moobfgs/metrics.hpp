#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moobfgs/common.hpp"

namespace moobfgs {

/// One collected objective vector with its provenance.
struct FrontPoint {
  Vector f;
  std::string solver;
  std::string problem;
  int start = -1;
};

/// A mutually nondominated set of objective vectors.
struct FrontArchive {
  std::vector<FrontPoint> points;
  int m = 0;
};

/// True when a is componentwise <= b with at least one strict inequality.
bool dominates(const Vector& a, const Vector& b);

/// Maximal mutually nondominated subset; exact duplicates are removed.
FrontArchive nondominated_filter(const std::vector<FrontPoint>& points);
FrontArchive nondominated_filter(const std::vector<Vector>& points);

struct PurityResult {
  double value = 0.0;
  bool empty_front = false;
};

/// Fraction of the solver's front present in the reference front
/// (componentwise match within 1e-10).
PurityResult purity(const FrontArchive& solver_front, const FrontArchive& reference);

struct SpreadResult {
  double gamma = 0.0;
  double delta = 0.0;
  bool degenerate = false;  ///< fewer than two points; both metrics are worst
};

/// Largest-gap and gap-uniformity measures over the sorted front. For
/// two objectives gaps are Euclidean distances between consecutive points;
/// `extremes` supplies the reference front's per-objective minimizers (the
/// front's own endpoints are used when absent). More than two objectives
/// fall back to per-objective value gaps.
SpreadResult spread_metrics(const FrontArchive& front,
                            const std::optional<std::vector<Vector>>& extremes = std::nullopt);

/// Cost matrix of instances (rows) by solvers (columns); +inf marks failures.
struct ProfileTable {
  std::vector<std::string> solvers;
  std::vector<std::string> instances;
  Matrix cost;
};

struct ProfileCurve {
  std::string solver;
  std::vector<double> tau;
  std::vector<double> rho;
};

/// Cumulative distributions of per-instance cost ratios relative to the best
/// solver; instances where every solver failed are excluded.
std::vector<ProfileCurve> performance_profile(const ProfileTable& table);

}  // namespace moobfgs
