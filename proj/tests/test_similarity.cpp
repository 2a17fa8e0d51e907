#include "doctest.h"

#include "boldscale/error.hpp"
#include "boldscale/random.hpp"
#include "boldscale/similarity.hpp"
#include "oracles/mu2_oracle.hpp"

#include <vector>

using namespace boldscale;

TEST_CASE("mu2 on small vectors") {
  CHECK(mu2(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}) == 1.0);
  CHECK(mu2(std::vector<double>{1, 2, 3}, std::vector<double>{6, 4, 2}) == -1.0);
  CHECK(mu2(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}) == doctest::Approx(0.6));
}

TEST_CASE("mu2 errors") {
  CHECK_THROWS_AS(mu2(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), Error);
  CHECK_THROWS_AS(mu2(std::vector<double>{1}, std::vector<double>{1}), Error);
  try {
    mu2(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 1});
    FAIL("constant vector must fail");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedCoefficient);
  }
}

TEST_CASE("mu2 properties on random ordinal data") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.below(30);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = 1.0 + static_cast<double>(rng.below(2));
      y[i] = 1.0 + static_cast<double>(rng.below(3));
    }
    x[0] = 1;
    x[1] = 2;
    y[0] = 1;
    y[1] = 3;
    const double m = mu2(x, y);
    CHECK(m == doctest::Approx(oracle::mu2(x, y)).epsilon(1e-12));
    CHECK(m == mu2(y, x));
    CHECK(std::abs(m) <= 1.0);
    std::vector<double> relabeled(x);
    for (double& v : relabeled) v *= 10.0;
    CHECK(mu2(relabeled, y) == m);
    bool discordant = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        discordant |= (x[i] - x[j]) * (y[i] - y[j]) < 0;
    CHECK((m == 1.0) == !discordant);
  }
}

namespace {

ResponseMatrix matrix(const std::vector<std::vector<int>>& columns) {
  std::vector<std::string> rows, cols;
  for (std::size_t r = 0; r < columns.front().size(); ++r) rows.push_back("r" + std::to_string(r));
  for (std::size_t c = 0; c < columns.size(); ++c) cols.push_back("v" + std::to_string(c));
  ResponseMatrix m(rows, cols);
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r)
      m.set(r, c, columns[c][r] == 0 ? std::optional<int>() : std::optional<int>(columns[c][r]));
  return m;
}

}  // namespace

TEST_CASE("similarity matrix entries") {
  const auto m = matrix({{1, 1, 2, 2}, {1, 1, 2, 2}, {2, 2, 1, 1}});
  const auto s = similarity_matrix(m);
  CHECK(s(0, 1) == 1.0);
  CHECK(s(0, 2) == -1.0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s(i, i) == 1.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(s(i, j) == s(j, i));
  }
}

TEST_CASE("similarity matrix matches an all-pairs loop, with pairwise deletion") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<int>> cols(3 + rng.below(4), std::vector<int>(12));
    for (auto& c : cols) {
      for (auto& v : c) v = rng.below(10) == 0 ? 0 : 1 + static_cast<int>(rng.below(2));
      c[0] = 1;
      c[1] = 2;
    }
    const auto m = matrix(cols);
    const auto s = similarity_matrix(m, SimilarityKind::WeakMonotonicity, 2);
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = i + 1; j < cols.size(); ++j) {
        std::vector<double> a, b;
        for (std::size_t r = 0; r < 12; ++r)
          if (cols[i][r] && cols[j][r]) {
            a.push_back(cols[i][r]);
            b.push_back(cols[j][r]);
          }
        double den = 0.0;
        for (std::size_t p = 0; p < a.size(); ++p)
          for (std::size_t q = 0; q < a.size(); ++q) den += std::abs(a[p] - a[q]) * std::abs(b[p] - b[q]);
        if (den == 0.0) continue;
        CHECK(s(i, j) == doctest::Approx(oracle::mu2(a, b)).epsilon(1e-12));
        CHECK(s.support_at(i, j) == a.size());
      }
  }
}

TEST_CASE("response codes are validated and undefined pairs are reported") {
  ResponseMatrix m({"r1", "r2"}, {"a", "b"});
  CHECK_THROWS_AS(m.set(0, 0, 3), Error);
  const auto constant = matrix({{1, 1, 1}, {1, 2, 1}});
  try {
    similarity_matrix(constant);
    FAIL("constant column must fail");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedCoefficient);
    CHECK(std::string(e.what()).find("v0") != std::string::npos);
  }
}

TEST_CASE("pearson agrees in sign with mu2 on dichotomous data") {
  const auto m = matrix({{1, 1, 2, 2, 1}, {1, 2, 2, 2, 1}});
  const auto s = similarity_matrix(m, SimilarityKind::Pearson);
  CHECK(s(0, 1) > 0.0);
  CHECK(s(0, 1) < 1.0);
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}) == doctest::Approx(1.0));
}
