#include <doctest.h>

#include <cmath>

#include "moobfgs/metrics.hpp"
#include "oracles.hpp"

using namespace moobfgs;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

std::vector<Vector> to_vectors(const FrontArchive& a) {
  std::vector<Vector> out;
  for (const auto& p : a.points) out.push_back(p.f);
  return out;
}

bool same_set(std::vector<Vector> a, std::vector<Vector> b) {
  if (a.size() != b.size()) return false;
  auto key = [](const Vector& v) {
    std::string k;
    for (Eigen::Index i = 0; i < v.size(); ++i) k += std::to_string(v(i)) + "|";
    return k;
  };
  std::sort(a.begin(), a.end(), [&](const Vector& x, const Vector& y) { return key(x) < key(y); });
  std::sort(b.begin(), b.end(), [&](const Vector& x, const Vector& y) { return key(x) < key(y); });
  for (size_t i = 0; i < a.size(); ++i) {
    if ((a[i] - b[i]).cwiseAbs().maxCoeff() != 0.0) return false;
  }
  return true;
}

FrontArchive archive(const std::vector<Vector>& pts) {
  FrontArchive a;
  for (const auto& p : pts) a.points.push_back(FrontPoint{p, "", "", -1});
  if (!pts.empty()) a.m = static_cast<int>(pts.front().size());
  return a;
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("incomparable pairs survive, dominated points fall") {
  auto out = nondominated_filter(std::vector<Vector>{v2(0, 1), v2(1, 0)});
  CHECK(out.points.size() == 2);

  out = nondominated_filter(std::vector<Vector>{v2(0, 1), v2(1, 0), v2(1, 1)});
  CHECK(out.points.size() == 2);
  for (const auto& p : out.points) CHECK(p.f != v2(1, 1));
}

TEST_CASE("duplicates deduplicate exactly") {
  auto out = nondominated_filter(std::vector<Vector>{v2(0, 1), v2(0, 1), v2(1, 0)});
  CHECK(out.points.size() == 2);
}

TEST_CASE("filter equals pairwise brute force on random clouds") {
  std::uint64_t state = 2718;
  for (int trial = 0; trial < 20; ++trial) {
    const int count = 20 + static_cast<int>(oracles::unif(state) * 480);
    const int m = 2 + static_cast<int>(oracles::unif(state) * 1.999);
    std::vector<Vector> pts;
    for (int i = 0; i < count; ++i) pts.push_back(oracles::random_vector(m, state, 0.0, 1.0));
    // Salt in duplicates.
    pts.push_back(pts.front());
    pts.push_back(pts.back());

    const auto filtered = to_vectors(nondominated_filter(pts));
    const auto reference = oracles::brute_force_filter(pts);
    CHECK(same_set(filtered, reference));
  }
}

TEST_CASE("purity counts surviving points") {
  const auto ref = archive({v2(0, 1), v2(1, 0), v2(0.5, 0.5)});
  const auto mine = archive({v2(0, 1), v2(1, 0)});
  CHECK(purity(mine, ref).value == 1.0);
  CHECK(purity(ref, ref).value == 1.0);
}

TEST_CASE("purity on the two-solver hand example") {
  // Solver A holds {(0,1), (2,2)}; solver B holds {(1,0)}. Against the union
  // reference only one of A's two points survives.
  std::vector<Vector> all = {v2(0, 1), v2(2, 2), v2(1, 0)};
  const auto reference = nondominated_filter(all);
  CHECK(reference.points.size() == 2);

  const auto pr = purity(archive({v2(0, 1), v2(2, 2)}), reference);
  CHECK(pr.value == 0.5);
}

TEST_CASE("empty fronts score worst and are flagged") {
  const auto ref = archive({v2(0, 1)});
  const auto pr = purity(archive({}), ref);
  CHECK(pr.empty_front);
  CHECK(pr.value == 0.0);
}

TEST_CASE("evenly spaced front has zero deviation term") {
  const auto front = archive({v2(0, 1), v2(0.5, 0.5), v2(1, 0)});
  const auto sp = spread_metrics(front);
  // Own extremes coincide with the endpoints, so delta0 = deltaN = 0 and the
  // deviation sum vanishes.
  CHECK(sp.delta == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sp.gamma == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("three-point hand computation") {
  const auto front = archive({v2(0, 1), v2(0.9, 0.1), v2(1, 0)});
  const auto sp = spread_metrics(front);
  const double gap1 = (v2(0.9, 0.1) - v2(0, 1)).norm();
  const double gap2 = (v2(1, 0) - v2(0.9, 0.1)).norm();
  CHECK(sp.gamma == doctest::Approx(std::max(gap1, gap2)).epsilon(1e-14));
  const double mean = 0.5 * (gap1 + gap2);
  const double expected_delta =
      (std::abs(gap1 - mean) + std::abs(gap2 - mean)) / ((3.0 - 1.0) * mean);
  CHECK(sp.delta == doctest::Approx(expected_delta).epsilon(1e-12));
}

TEST_CASE("two-point front with reference extremes") {
  const auto front = archive({v2(0.2, 0.8), v2(0.8, 0.2)});
  std::vector<Vector> extremes = {v2(0, 1), v2(1, 0)};
  const auto sp = spread_metrics(front, extremes);
  const double d0 = (v2(0.2, 0.8) - v2(0, 1)).norm();
  const double dN = (v2(1, 0) - v2(0.8, 0.2)).norm();
  const double gap = (v2(0.8, 0.2) - v2(0.2, 0.8)).norm();
  CHECK(sp.gamma == doctest::Approx(std::max({d0, dN, gap})).epsilon(1e-14));
  CHECK(sp.delta == doctest::Approx((d0 + dN) / (d0 + dN + gap)).epsilon(1e-12));
}

TEST_CASE("degenerate fronts are flagged") {
  const auto sp = spread_metrics(archive({v2(0, 1)}));
  CHECK(sp.degenerate);
  CHECK(std::isinf(sp.gamma));
  CHECK(std::isinf(sp.delta));
}

TEST_CASE("profile on the worked two-by-two example") {
  ProfileTable t;
  t.solvers = {"A", "B"};
  t.instances = {"p1", "p2"};
  t.cost.resize(2, 2);
  t.cost << 1.0, 2.0, 4.0, 2.0;
  const auto curves = performance_profile(t);
  REQUIRE(curves.size() == 2);

  auto value_at = [](const ProfileCurve& c, double tau) {
    double v = 0.0;
    for (size_t i = 0; i < c.tau.size(); ++i)
      if (c.tau[i] <= tau) v = c.rho[i];
    return v;
  };
  CHECK(value_at(curves[0], 1.0) == 0.5);
  CHECK(value_at(curves[1], 1.0) == 0.5);
  CHECK(value_at(curves[0], 2.0) == 1.0);
  CHECK(value_at(curves[1], 2.0) == 1.0);
}

TEST_CASE("single solver profiles its own success rate") {
  ProfileTable t;
  t.solvers = {"only"};
  t.instances = {"a", "b", "c"};
  t.cost.resize(3, 1);
  t.cost << 1.0, 2.0, std::numeric_limits<double>::infinity();
  const auto curves = performance_profile(t);
  REQUIRE(curves.size() == 1);
  // Self-ratios are 1, so the curve opens and closes at the success fraction.
  CHECK(curves[0].rho.front() == doctest::Approx(2.0 / 3.0));
  CHECK(curves[0].rho.back() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("identical costs give full coverage at ratio one") {
  ProfileTable t;
  t.solvers = {"A", "B"};
  t.instances = {"p", "q"};
  t.cost.resize(2, 2);
  t.cost << 3.0, 3.0, 5.0, 5.0;
  for (const auto& c : performance_profile(t)) {
    CHECK(c.tau.front() == 1.0);
    CHECK(c.rho.front() == 1.0);
  }
}

TEST_CASE("profiles are scale invariant and monotone") {
  std::uint64_t state = 4096;
  ProfileTable t;
  t.solvers = {"A", "B", "C"};
  for (int i = 0; i < 12; ++i) t.instances.push_back("i" + std::to_string(i));
  t.cost.resize(12, 3);
  for (int i = 0; i < 12; ++i)
    for (int s = 0; s < 3; ++s)
      t.cost(i, s) = oracles::unif(state) < 0.15 ? std::numeric_limits<double>::infinity()
                                                 : 0.1 + oracles::unif(state);

  const auto base = performance_profile(t);
  ProfileTable scaled = t;
  scaled.cost = 37.5 * t.cost;
  const auto again = performance_profile(scaled);
  REQUIRE(base.size() == again.size());
  for (size_t s = 0; s < base.size(); ++s) {
    REQUIRE(base[s].rho.size() == again[s].rho.size());
    for (size_t i = 0; i < base[s].rho.size(); ++i) {
      CHECK(base[s].rho[i] == doctest::Approx(again[s].rho[i]).epsilon(1e-15));
    }
    for (size_t i = 1; i < base[s].rho.size(); ++i) CHECK(base[s].rho[i] >= base[s].rho[i - 1]);
  }
}

TEST_SUITE_END();
