#include "doctest.h"

#include "boldscale/error.hpp"
#include "boldscale/ssa.hpp"
#include "support.hpp"

#include <algorithm>
#include <numeric>

using namespace boldscale;

namespace {

std::vector<double> pair_distances(const std::vector<Point2>& pts) {
  std::vector<double> d;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d.push_back(distance(pts[i], pts[j]));
  return d;
}

std::vector<std::size_t> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  return order;
}

SimilarityMatrix from_pairs(std::size_t n, const std::vector<double>& pair_sims) {
  SimilarityMatrix s;
  s.ids = support::ids(n);
  s.values.assign(n * n, 1.0);
  s.support.assign(n * n, 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k) s.values[i * n + j] = s.values[j * n + i] = pair_sims[k];
  return s;
}

}  // namespace

TEST_CASE("equal similarities give an equilateral triangle") {
  const auto s = from_pairs(3, {0.5, 0.5, 0.5});
  const auto c = embed(s, 2, 1, 5);
  const auto d = pair_distances(c.points);
  CHECK(d[0] == doctest::Approx(d[1]).epsilon(1e-6));
  CHECK(d[1] == doctest::Approx(d[2]).epsilon(1e-6));
  CHECK(c.alienation <= 1e-6);
}

TEST_CASE("six known points are recovered up to distance order") {
  const std::vector<Point2> truth{{0, 0}, {1, 0.2}, {2.1, -0.3}, {0.4, 1.7}, {1.6, 1.1}, {-0.9, 0.8}};
  const auto true_d = pair_distances(truth);
  const double max_d = *std::max_element(true_d.begin(), true_d.end());
  std::vector<double> sims;
  for (double d : true_d) sims.push_back(1.0 - d / max_d);
  const auto s = from_pairs(truth.size(), sims);
  const auto c = embed(s, 2, 42, 10);
  CHECK(c.alienation <= 1e-3);
  CHECK(ranks(pair_distances(c.points)) == ranks(true_d));
  CHECK(monotone_violations(c.points, s) == 0);
}

TEST_CASE("embedding is deterministic and normalized") {
  SplitMix64 rng(8);
  const auto s = support::similarity_of(support::random_points(rng, 9));
  const auto a = embed(s, 2, 5, 4);
  const auto b = embed(s, 2, 5, 4);
  REQUIRE(a.points.size() == 9);
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
  double mx = 0, my = 0, r2 = 0;
  for (const auto& p : a.points) {
    mx += p.x;
    my += p.y;
    r2 += p.x * p.x + p.y * p.y;
    CHECK(std::isfinite(p.x));
  }
  CHECK(std::abs(mx) < 1e-9);
  CHECK(std::abs(my) < 1e-9);
  CHECK(r2 / 9 == doctest::Approx(1.0));
  CHECK(a.ids == s.ids);
}

TEST_CASE("alienation values") {
  SUBCASE("zero on a monotone arrangement") {
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 2}, {3, 3}};
    CHECK(alienation(pts, support::similarity_of(pts)) == 0.0);
  }
  SUBCASE("one transposed pair among four variables") {
    // Ascending distances: 01=1, 02=2, 12=sqrt5, 23=sqrt10, 13=sqrt13, 03=sqrt18.
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 2}, {3, 3}};
    // Row-major pairs 01 02 03 12 13 23; 02 and 12 swap places in the order.
    const auto s = from_pairs(4, {6, 4, 1, 5, 2, 3});
    const double expected = (std::sqrt(5.0) - 2.0) / std::sqrt(102.0);
    CHECK(alienation(pts, s) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.0233742).epsilon(1e-5));
  }
  SUBCASE("bounded and rotation invariant") {
    SplitMix64 rng(2);
    for (int t = 0; t < 10; ++t) {
      const auto pts = support::random_points(rng, 7);
      auto sims = support::similarity_of(support::random_points(rng, 7));
      const double a = alienation(pts, sims);
      CHECK(a >= 0.0);
      CHECK(a <= 1.0);
      CHECK(alienation(support::rotated(pts, 37.0), sims) == doctest::Approx(a).epsilon(1e-9));
    }
  }
}

TEST_CASE("primary ties impose no order, secondary ties ask for equal distances") {
  const std::vector<double> d{1.0, 3.0, 2.0};
  const auto s = from_pairs(3, {0.9, 0.5, 0.5});
  const auto primary = disparities(d, s, TieApproach::Primary);
  CHECK(primary == std::vector<double>{1.0, 3.0, 2.0});
  const auto secondary = disparities(d, s, TieApproach::Secondary);
  CHECK(secondary[1] == doctest::Approx(2.5));
  CHECK(secondary[2] == doctest::Approx(2.5));
}

TEST_CASE("an optimizer sweep never increases its loss") {
  SplitMix64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto s = support::similarity_of(support::random_points(rng, 8));
    auto pts = random_start(8, 100 + t, 0);
    double previous = alienation(pts, s, TieApproach::Secondary);
    for (int sweep = 0; sweep < 20; ++sweep) {
      const double loss = nonmetric_sweep(pts, s);
      const double now = alienation(pts, s, TieApproach::Secondary);
      CHECK(now * now == doctest::Approx(loss).epsilon(1e-9));
      CHECK(now <= previous + 1e-12);
      previous = now;
    }
  }
}

TEST_CASE("result has no more order violations than its random starts") {
  SplitMix64 rng(6);
  for (int t = 0; t < 5; ++t) {
    const auto s = support::similarity_of(support::random_points(rng, 10));
    const auto c = embed(s, 2, 9, 4);
    for (int r = 0; r < 4; ++r)
      CHECK(monotone_violations(c.points, s) <= monotone_violations(random_start(10, 9, r), s));
  }
}

TEST_CASE("embed argument errors") {
  SplitMix64 rng(1);
  const auto s = support::similarity_of(support::random_points(rng, 5));
  CHECK_THROWS_AS(embed(s, 3, 1, 1), Error);
  const auto tiny = support::similarity_of(support::random_points(rng, 2));
  try {
    embed(tiny, 2, 1, 1);
    FAIL("two variables cannot be embedded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooFewVariables);
  }
}
