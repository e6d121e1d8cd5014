#include "moobfgs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace moobfgs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool exactly_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

}  // namespace

bool dominates(const Vector& a, const Vector& b) {
  bool strict = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) > b(i)) return false;
    if (a(i) < b(i)) strict = true;
  }
  return strict;
}

FrontArchive nondominated_filter(const std::vector<FrontPoint>& points) {
  FrontArchive archive;
  if (!points.empty()) archive.m = static_cast<int>(points.front().f.size());

  // Sequential archive insertion: each candidate is screened against the
  // current nondominated set, which it may also shrink.
  for (const auto& cand : points) {
    bool drop = false;
    for (auto it = archive.points.begin(); it != archive.points.end();) {
      if (exactly_equal(it->f, cand.f) || dominates(it->f, cand.f)) {
        drop = true;
        break;
      }
      if (dominates(cand.f, it->f)) {
        it = archive.points.erase(it);
      } else {
        ++it;
      }
    }
    if (!drop) archive.points.push_back(cand);
  }
  return archive;
}

FrontArchive nondominated_filter(const std::vector<Vector>& points) {
  std::vector<FrontPoint> fps;
  fps.reserve(points.size());
  for (const auto& v : points) fps.push_back(FrontPoint{v, "", "", -1});
  return nondominated_filter(fps);
}

PurityResult purity(const FrontArchive& solver_front, const FrontArchive& reference) {
  PurityResult res;
  if (solver_front.points.empty()) {
    res.empty_front = true;
    res.value = 0.0;
    return res;
  }
  int hits = 0;
  for (const auto& p : solver_front.points) {
    for (const auto& r : reference.points) {
      if (p.f.size() == r.f.size() && (p.f - r.f).cwiseAbs().maxCoeff() <= 1e-10) {
        ++hits;
        break;
      }
    }
  }
  res.value = static_cast<double>(hits) / static_cast<double>(solver_front.points.size());
  return res;
}

SpreadResult spread_metrics(const FrontArchive& front,
                            const std::optional<std::vector<Vector>>& extremes) {
  SpreadResult res;
  const auto N = front.points.size();
  if (N < 2) {
    res.degenerate = true;
    res.gamma = kInf;
    res.delta = kInf;
    return res;
  }

  if (front.m == 2) {
    // Sort by the first objective; a nondominated biobjective front is then
    // strictly decreasing in the second.
    std::vector<Vector> pts;
    pts.reserve(N);
    for (const auto& p : front.points) pts.push_back(p.f);
    std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
      return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
    });

    // Extreme anchors: the per-objective minimizers of the reference front,
    // or the front's own endpoints when no reference is supplied.
    Vector left = pts.front(), right = pts.back();
    if (extremes.has_value() && !extremes->empty()) {
      left = right = (*extremes)[0];
      for (const auto& e : *extremes) {
        if (e(0) < left(0) || (e(0) == left(0) && e(1) < left(1))) left = e;
        if (e(1) < right(1) || (e(1) == right(1) && e(0) < right(0))) right = e;
      }
    }

    const double delta0 = (pts.front() - left).norm();
    const double deltaN = (right - pts.back()).norm();
    std::vector<double> gaps;
    gaps.reserve(N - 1);
    for (size_t i = 0; i + 1 < N; ++i) gaps.push_back((pts[i + 1] - pts[i]).norm());

    double gamma = std::max(delta0, deltaN);
    for (double g : gaps) gamma = std::max(gamma, g);

    const double mean =
        std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    double dev = 0.0;
    for (double g : gaps) dev += std::abs(g - mean);
    const double denom = delta0 + deltaN + static_cast<double>(N - 1) * mean;
    res.gamma = gamma;
    res.delta = denom > 0.0 ? (delta0 + deltaN + dev) / denom : 0.0;
    return res;
  }

  // General case: per-objective value gaps, worst objective taken.
  double gamma = 0.0;
  double delta = 0.0;
  for (int j = 0; j < front.m; ++j) {
    std::vector<double> vals;
    vals.reserve(N);
    for (const auto& p : front.points) vals.push_back(p.f(j));
    std::sort(vals.begin(), vals.end());

    double lo = vals.front(), hi = vals.back();
    if (extremes.has_value()) {
      for (const auto& e : *extremes) {
        lo = std::min(lo, e(j));
        hi = std::max(hi, e(j));
      }
    }
    const double delta0 = vals.front() - lo;
    const double deltaN = hi - vals.back();
    std::vector<double> gaps;
    for (size_t i = 0; i + 1 < N; ++i) gaps.push_back(vals[i + 1] - vals[i]);

    double g_obj = std::max(delta0, deltaN);
    for (double g : gaps) g_obj = std::max(g_obj, g);
    gamma = std::max(gamma, g_obj);

    const double mean =
        std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    double dev = 0.0;
    for (double g : gaps) dev += std::abs(g - mean);
    const double denom = delta0 + deltaN + static_cast<double>(N - 1) * mean;
    delta = std::max(delta, denom > 0.0 ? (delta0 + deltaN + dev) / denom : 0.0);
  }
  res.gamma = gamma;
  res.delta = delta;
  return res;
}

std::vector<ProfileCurve> performance_profile(const ProfileTable& table) {
  const auto n_solvers = static_cast<Eigen::Index>(table.solvers.size());
  const auto n_instances = static_cast<Eigen::Index>(table.instances.size());
  if (table.cost.rows() != n_instances || table.cost.cols() != n_solvers) {
    throw std::invalid_argument("performance_profile: cost matrix shape mismatch");
  }

  // Ratios against the per-instance best; rows where every solver failed
  // contribute no ratios but stay in the denominator.
  std::vector<std::vector<double>> ratios(static_cast<size_t>(n_solvers));
  for (Eigen::Index i = 0; i < n_instances; ++i) {
    double best = kInf;
    for (Eigen::Index s = 0; s < n_solvers; ++s) best = std::min(best, table.cost(i, s));
    if (!std::isfinite(best)) continue;
    if (!(best > 0.0)) throw std::invalid_argument("performance_profile: costs must be positive");
    for (Eigen::Index s = 0; s < n_solvers; ++s) {
      const double c = table.cost(i, s);
      if (std::isfinite(c)) ratios[static_cast<size_t>(s)].push_back(c / best);
    }
  }
  const auto counted = n_instances;

  // Shared breakpoint grid across solvers.
  std::vector<double> grid;
  grid.push_back(1.0);
  for (const auto& rs : ratios)
    for (double r : rs) grid.push_back(r);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<ProfileCurve> curves;
  for (Eigen::Index s = 0; s < n_solvers; ++s) {
    auto rs = ratios[static_cast<size_t>(s)];
    std::sort(rs.begin(), rs.end());
    ProfileCurve c;
    c.solver = table.solvers[static_cast<size_t>(s)];
    for (double tau : grid) {
      const auto cnt = std::upper_bound(rs.begin(), rs.end(), tau) - rs.begin();
      c.tau.push_back(tau);
      c.rho.push_back(counted > 0 ? static_cast<double>(cnt) / static_cast<double>(counted)
                                  : 0.0);
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

}  // namespace moobfgs
