#include "doctest.h"

#include "boldscale/ct_core.hpp"
#include "boldscale/error.hpp"

#include <cmath>
#include <vector>

using namespace boldscale;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("challenge index of the worked gain and loss problems") {
  const auto gain = make_problem("g", 10, 0.8, 100, 0.2);
  const auto loss = make_problem("l", -10, 0.8, -100, 0.2);
  CHECK(gain.kind == ProblemKind::Gain);
  CHECK(loss.kind == ProblemKind::Loss);
  CHECK(challenge_index(gain) == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(challenge_index(loss) == doctest::Approx(0.06).epsilon(1e-12));
}

TEST_CASE("invalid problems are rejected") {
  CHECK(kind_of([] { make_problem("a", 1, 0.5, 2, 0.5); }) == ErrorKind::InvalidProblem);
  CHECK(kind_of([] { make_problem("b", -1, 0.8, 2, 0.2); }) == ErrorKind::InvalidProblem);
  CHECK(kind_of([] { make_problem("c", 10, 0.8, 5, 0.2); }) == ErrorKind::InvalidProblem);
  CHECK(kind_of([] { make_problem("d", 10, 0.0, 50, 0.0); }) == ErrorKind::InvalidProblem);
  CHECK(kind_of([] { make_problem("e", 10, 1.2, 50, 0.2); }) == ErrorKind::InvalidProblem);
  ChoiceProblem wrong{"f", -10, 0.8, -100, 0.2, ProblemKind::Gain};
  CHECK(kind_of([&] { validate(wrong); }) == ErrorKind::InvalidProblem);
}

TEST_CASE("default and bold options") {
  const auto gain = classify_options(make_problem("g", 10, 0.8, 100, 0.2));
  CHECK(gain.default_option == Option{10, 0.8});
  CHECK(gain.bold_option == Option{100, 0.2});
  const auto loss = classify_options(make_problem("l", -10, 0.8, -100, 0.2));
  CHECK(loss.default_option == Option{-100, 0.2});
  CHECK(loss.bold_option == Option{-10, 0.8});
}

TEST_CASE("bold option probability: lower for gains, higher for losses") {
  for (double p0 : {0.3, 0.6, 0.9})
    for (double p1 : {0.05, 0.2}) {
      const auto g = classify_options(make_problem("g", 5, p0, 50, p1));
      const auto l = classify_options(make_problem("l", -5, p0, -50, p1));
      CHECK(g.bold_option.probability < g.default_option.probability);
      CHECK(l.bold_option.probability > l.default_option.probability);
    }
}

TEST_CASE("challenge index is scale covariant and monotone in the amounts") {
  const auto base = make_problem("g", 10, 0.7, 40, 0.3);
  for (double c : {0.5, 3.0, 1000.0}) {
    const auto scaled = make_problem("g", 10 * c, 0.7, 40 * c, 0.3);
    CHECK(challenge_index(scaled) == doctest::Approx(challenge_index(base)).epsilon(1e-12));
  }
  for (double x0 = 1; x0 < 20; x0 += 1) {
    const double a = challenge_index(make_problem("a", x0, 0.7, 40, 0.3));
    const double b = challenge_index(make_problem("b", x0 + 0.5, 0.7, 40, 0.3));
    CHECK(b > a);
  }
  for (double x1 = 25; x1 < 200; x1 += 5) {
    const double a = challenge_index(make_problem("a", 20, 0.7, x1, 0.3));
    const double b = challenge_index(make_problem("b", 20, 0.7, x1 + 1, 0.3));
    CHECK(b < a);
  }
}

TEST_CASE("power functions and weighting checks") {
  const auto p = make_problem("g", 10, 0.8, 100, 0.2);
  const double expected = (std::pow(10.0, 0.5) / std::pow(100.0, 0.5)) *
                          (std::pow(0.8, 2.0) - std::pow(0.2, 2.0));
  CHECK(challenge_index(p, CiFunctions::power(0.5, 2.0)) == doctest::Approx(expected));
  CHECK_THROWS_AS(CiFunctions::power(0.0, 1.0), Error);

  CiFunctions flat = CiFunctions::identity();
  flat.w0 = [](double) { return 0.5; };
  flat.w1 = [](double) { return 0.5; };
  CHECK(kind_of([&] { challenge_index(p, flat); }) == ErrorKind::InvalidWeighting);

  CiFunctions decreasing = CiFunctions::identity();
  decreasing.f0 = [](double t) { return -t; };
  CHECK_THROWS_AS(check_monotone(decreasing), Error);
  CHECK_NOTHROW(check_monotone(CiFunctions::identity()));
}

TEST_CASE("CI facet labels") {
  const std::vector<double> ci{0.01, 0.05, 0.20, 0.40};
  CHECK(resolve_split(ci, CiSplit::median()) == doctest::Approx(0.125));

  // x0/x1 = 0.5 and p0 - p1 chosen to hit each target CI.
  std::vector<ChoiceProblem> problems;
  for (std::size_t k = 0; k < ci.size(); ++k)
    problems.push_back(make_problem("p" + std::to_string(k), 50, 0.9, 100, 0.9 - ci[k] * 2));
  const auto median = label_ci_facet(problems, CiFunctions::identity(), CiSplit::median());
  std::vector<CiLevel> levels;
  for (const auto& l : median.labels) levels.push_back(l.ci_facet);
  CHECK(levels == std::vector<CiLevel>{CiLevel::Low, CiLevel::Low, CiLevel::High, CiLevel::High});
  CHECK(median.threshold == doctest::Approx(0.125));

  const auto single = label_ci_facet(std::span(problems).first(1), CiFunctions::identity(),
                                     CiSplit::median());
  CHECK(single.labels.front().ci_facet == CiLevel::High);

  std::vector<ChoiceProblem> two{make_problem("a", 10, 0.8, 100, 0.2),
                                 make_problem("b", 50, 0.8, 100, 0.4)};
  const auto fixed = label_ci_facet(two, CiFunctions::identity(), CiSplit::at(0.1));
  CHECK(fixed.labels[0].ci_facet == CiLevel::Low);
  CHECK(fixed.labels[1].ci_facet == CiLevel::High);
  CHECK(fixed.labels[1].ci_value == doctest::Approx(0.2));

  CHECK(kind_of([] { label_ci_facet({}, CiFunctions::identity(), CiSplit::median()); }) ==
        ErrorKind::EmptyInput);
}

TEST_CASE("High iff CI at or above the recorded threshold") {
  std::vector<ChoiceProblem> problems;
  for (int k = 1; k <= 9; ++k)
    problems.push_back(make_problem("p" + std::to_string(k), k, 0.9, 10 + k, 0.1 * (k % 4 + 1)));
  const auto labeling = label_ci_facet(problems, CiFunctions::identity(), CiSplit::median());
  for (const auto& l : labeling.labels)
    CHECK((l.ci_facet == CiLevel::High) == (l.ci_value >= labeling.threshold));
}
