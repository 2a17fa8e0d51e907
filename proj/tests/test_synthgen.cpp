#include "doctest.h"

#include "boldscale/ct_core.hpp"
#include "boldscale/error.hpp"
#include "boldscale/synthgen.hpp"

#include <algorithm>
#include <cmath>

using namespace boldscale;

namespace {

double bold_rate(const ResponseMatrix& r, std::size_t col) {
  double bold = 0;
  for (std::size_t i = 0; i < r.rows(); ++i) bold += r.at(i, col) == 2;
  return bold / static_cast<double>(r.rows());
}

}  // namespace

TEST_CASE("default problem set") {
  const GeneratorConfig config;
  const auto problems = generate_problems(config);
  REQUIRE(problems.size() == 44);
  std::size_t gains = 0;
  for (const auto& p : problems) {
    CHECK_NOTHROW(validate(p));
    gains += p.kind == ProblemKind::Gain;
    CHECK(p.x0 == std::round(p.x0));
    CHECK(p.x1 == std::round(p.x1));
    CHECK(p.p0 * 100 == doctest::Approx(std::round(p.p0 * 100)));
    CHECK(p.p1 * 100 == doctest::Approx(std::round(p.p1 * 100)));
  }
  CHECK(gains == 22);
  CHECK(problems.front().id == "G01");
  CHECK(problems.back().id == "L22");

  const auto labeling = label_ci_facet(problems, CiFunctions::identity(), CiSplit{});
  for (auto kind : {ProblemKind::Gain, ProblemKind::Loss}) {
    bool low = false, high = false;
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (problems[i].kind != kind) continue;
      const double ci = challenge_index(problems[i]);
      (ci >= labeling.threshold ? high : low) = true;
    }
    CHECK(low);
    CHECK(high);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  GeneratorConfig config;
  config.n_respondents = 30;
  const auto a = generate_problems(config);
  const auto b = generate_problems(config);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x0 == b[i].x0);
    CHECK(a[i].p1 == b[i].p1);
  }
  const auto ra = generate_responses(a, config);
  const auto rb = generate_responses(b, config);
  REQUIRE(ra.rows() == 30);
  CHECK(ra.respondent_ids().front() == "R001");
  bool same = true;
  for (std::size_t i = 0; i < ra.rows(); ++i)
    for (std::size_t j = 0; j < ra.cols(); ++j) same = same && ra.at(i, j) == rb.at(i, j);
  CHECK(same);

  config.seed = 2;
  const auto c = generate_problems(config);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || a[i].x1 != c[i].x1;
  CHECK(differs);
}

TEST_CASE("adding respondents keeps earlier rows") {
  GeneratorConfig config;
  config.n_respondents = 10;
  const auto problems = generate_problems(config);
  const auto small = generate_responses(problems, config);
  config.n_respondents = 20;
  const auto large = generate_responses(problems, config);
  for (std::size_t i = 0; i < small.rows(); ++i)
    for (std::size_t j = 0; j < small.cols(); ++j) CHECK(small.at(i, j) == large.at(i, j));
}

TEST_CASE("infeasible ranges fail") {
  GeneratorConfig config;
  config.gain.x1 = {10.0, 10.0};
  config.gain.x0 = {10.0, 10.0};
  config.max_attempts = 5;
  try {
    generate_problems(config);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GenerationFailure);
  }
}

TEST_CASE("invalid configurations") {
  GeneratorConfig config;
  config.n_gain = 0;
  CHECK_THROWS_AS(validate(config), Error);
  config = {};
  config.loss.p0 = {0.5, 1.5};
  CHECK_THROWS_AS(validate(config), Error);
  config = {};
  config.gain.x0 = {50, 10};
  CHECK_THROWS_AS(validate(config), Error);
}

TEST_CASE("without effects responses are fair coins") {
  GeneratorConfig config;
  config.alpha = 0;
  config.beta = 0;
  config.trait_sd = 0;
  config.ci_trait_sd = 0;
  config.n_respondents = 2000;
  const auto problems = generate_problems(config);
  const auto r = generate_responses(problems, config);
  double total = 0;
  for (std::size_t j = 0; j < r.cols(); ++j) total += bold_rate(r, j);
  CHECK(total / static_cast<double>(r.cols()) == doctest::Approx(0.5).epsilon(0.06));
}

TEST_CASE("a strong CI effect orders bold rates") {
  GeneratorConfig config;
  config.beta = 50;
  config.alpha = 0;
  config.n_respondents = 400;
  const auto problems = generate_problems(config);
  const auto r = generate_responses(problems, config);
  std::size_t lo = 0, hi = 0;
  for (std::size_t j = 1; j < problems.size(); ++j) {
    if (challenge_index(problems[j]) < challenge_index(problems[lo])) lo = j;
    if (challenge_index(problems[j]) > challenge_index(problems[hi])) hi = j;
  }
  CHECK(bold_rate(r, hi) > bold_rate(r, lo));
}
