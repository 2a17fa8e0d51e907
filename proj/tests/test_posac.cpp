#include "doctest.h"

#include "boldscale/error.hpp"
#include "boldscale/posac.hpp"
#include "boldscale/random.hpp"
#include "oracles/posac_oracle.hpp"

#include <algorithm>
#include <set>

using namespace boldscale;

namespace {

std::vector<Profile> random_profiles(SplitMix64& rng, std::size_t n, std::size_t items, int levels = 2) {
  std::set<std::vector<int>> seen;
  std::vector<Profile> out;
  while (out.size() < n) {
    std::vector<int> s(items);
    for (auto& v : s) v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(levels)));
    if (!seen.insert(s).second) continue;
    out.push_back({s, 1 + rng.below(4), out.size()});
  }
  return out;
}

}  // namespace

TEST_CASE("profiles from composite rows") {
  CompositeMatrix m;
  m.constructs = {"a", "b", "c", "d"};
  for (int r = 0; r < 5; ++r) {
    m.respondent_ids.push_back("r" + std::to_string(r));
    for (int c = 0; c < 4; ++c) m.values.push_back(r < 3 ? 2 : 1);
  }
  const auto p = build_profiles(m);
  REQUIRE(p.size() == 2);
  CHECK(p[0].scores == std::vector<int>{2, 2, 2, 2});
  CHECK(p[0].frequency == 3);
  CHECK(p[1].frequency == 2);
  CHECK(p[1].id == 1);
  CHECK_THROWS_AS(build_profiles(CompositeMatrix{}), Error);
}

TEST_CASE("sixteen possible profiles over four dichotomous items") {
  SplitMix64 rng(4);
  CompositeMatrix m;
  m.constructs = {"a", "b", "c", "d"};
  for (int r = 0; r < 126; ++r) {
    m.respondent_ids.push_back("r" + std::to_string(r));
    for (int c = 0; c < 4; ++c) m.values.push_back(1 + static_cast<int>(rng.below(2)));
  }
  const auto p = build_profiles(m);
  CHECK(p.size() <= 16);
  std::size_t total = 0;
  for (const auto& q : p) total += q.frequency;
  CHECK(total == 126);
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i - 1].scores > p[i].scores);
}

TEST_CASE("profile comparison") {
  CHECK(compare(std::vector<int>{2, 2, 1, 1}, std::vector<int>{2, 1, 1, 1}) == Relation::Greater);
  CHECK(compare(std::vector<int>{2, 1, 1, 1}, std::vector<int>{2, 2, 1, 1}) == Relation::Less);
  CHECK(compare(std::vector<int>{1, 2}, std::vector<int>{2, 1}) == Relation::Incomparable);
  CHECK(compare(std::vector<int>{1, 1}, std::vector<int>{1, 1}) == Relation::Equal);
  try {
    compare(std::vector<int>{1, 1}, std::vector<int>{1, 1, 1});
    FAIL("length mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
}

TEST_CASE("correp by hand") {
  const std::vector<Profile> chain{{{1, 1}, 1, 0}, {{2, 1}, 1, 1}, {{2, 2}, 1, 2}};
  const std::vector<RankPoint> diagonal{{1, 1}, {2, 2}, {3, 3}};
  CHECK(correp(chain, diagonal) == 1.0);
  // The first two swap on both axes: only that pair is wrong.
  const std::vector<RankPoint> inverted{{2, 2}, {1, 1}, {3, 3}};
  CHECK(correp(chain, inverted) == doctest::Approx(2.0 / 3.0));
  // Weighted: the wrong pair has weight 1*1 of 1*1 + 1*5 + 1*5.
  auto weighted = chain;
  weighted[2].frequency = 5;
  CHECK(correp(weighted, inverted) == doctest::Approx(10.0 / 11.0));
}

TEST_CASE("correp depends only on coordinate order") {
  SplitMix64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto p = random_profiles(rng, 6, 3);
    std::vector<double> x, y, x2;
    for (std::size_t i = 0; i < p.size(); ++i) {
      x.push_back(rng.uniform());
      y.push_back(rng.uniform());
      x2.push_back(std::exp(3.0 * x.back()) - 7.0);
    }
    CHECK(correp(p, x, y) == correp(p, x2, y));
  }
}

TEST_CASE("chains and a crossing pair are represented exactly") {
  std::vector<Profile> chain;
  for (int k = 0; k < 5; ++k) {
    std::vector<int> s(4, 1);
    for (int c = 0; c < k; ++c) s[static_cast<std::size_t>(c)] = 2;
    chain.push_back({s, static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k)});
  }
  const auto sol = solve(chain, 3, 8);
  CHECK(sol.correp == 1.0);
  for (const auto& c : sol.coords) CHECK(c.x == c.y);

  const std::vector<Profile> pair{{{1, 2}, 1, 0}, {{2, 1}, 1, 1}};
  const auto two = solve(pair, 1, 4);
  CHECK(two.correp == 1.0);
  CHECK((two.coords[0].x < two.coords[1].x) != (two.coords[0].y < two.coords[1].y));
}

TEST_CASE("solve reaches the exhaustive optimum on small instances") {
  SplitMix64 rng(77);
  for (int t = 0; t < 30; ++t) {
    const auto p = random_profiles(rng, 2 + rng.below(6), 3);
    const auto sol = solve(p, 5, 16);
    CHECK(sol.correp == doctest::Approx(oracle::best_correp(sol.profiles)).epsilon(1e-12));
  }
}

TEST_CASE("solution shape and invariants") {
  SplitMix64 rng(13);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_profiles(rng, 5 + rng.below(5), 4);
    const auto sol = solve(p, 21, 8);
    const std::size_t n = sol.profiles.size();
    std::vector<int> xs, ys;
    for (const auto& c : sol.coords) {
      xs.push_back(c.x);
      ys.push_back(c.y);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(xs[k] == static_cast<int>(k + 1));
      CHECK(ys[k] == static_cast<int>(k + 1));
    }
    CHECK(sol.correp >= sol.initial_correp);
    for (int r = 0; r < 8; ++r)
      CHECK(sol.correp >= correp(sol.profiles, initial_coordinates(sol.profiles, 21, r)));
    const auto again = solve(p, 21, 8);
    CHECK(again.coords == sol.coords);
  }
}

TEST_CASE("permuting items leaves the optimum unchanged") {
  SplitMix64 rng(29);
  for (int t = 0; t < 10; ++t) {
    auto p = random_profiles(rng, 2 + rng.below(5), 3);
    auto q = p;
    for (auto& profile : q) std::rotate(profile.scores.begin(), profile.scores.begin() + 1, profile.scores.end());
    CHECK(solve(p, 2, 16).correp == doctest::Approx(solve(q, 2, 16).correp));
  }
}

TEST_CASE("equal profiles merge and a single profile is degenerate") {
  const std::vector<Profile> dup{{{1, 2}, 2, 0}, {{1, 2}, 3, 1}, {{2, 2}, 1, 2}};
  const auto sol = solve(dup, 1, 2);
  REQUIRE(sol.profiles.size() == 2);
  CHECK(sol.profiles[1].frequency == 5);
  const std::vector<Profile> one{{{1, 2}, 4, 0}};
  try {
    solve(one, 1, 2);
    FAIL("single profile");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateSolution);
  }
}
