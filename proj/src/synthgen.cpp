#include "boldscale/synthgen.hpp"

#include "boldscale/error.hpp"
#include "boldscale/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace boldscale {

namespace {

constexpr std::uint64_t kProblemStream = 0x70726f62;  // "prob"
constexpr std::uint64_t kRespondentStream = 0x72657370;  // "resp"

void check_range(const Range& r, const char* what, bool probability) {
  const bool ok = std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi &&
                  (probability ? (r.lo > 0.0 && r.hi <= 1.0) : r.lo > 0.0);
  if (!ok)
    throw Error(ErrorKind::InvalidArgument, std::string("invalid generator range for ") + what);
}

std::string numbered(char prefix, std::size_t k, std::size_t total) {
  const int width = total >= 100 ? 3 : 2;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, k);
  return buf;
}

// One problem of the given type, or nothing if the draw breaks an invariant.
bool draw_problem(SplitMix64& rng, const TypeRanges& r, ProblemKind kind, std::string id,
                  ChoiceProblem& out) {
  const double x0 = std::round(rng.uniform(r.x0.lo, r.x0.hi));
  const double x1 = std::round(rng.uniform(r.x1.lo, r.x1.hi));
  const double p0 = std::round(rng.uniform(r.p0.lo, r.p0.hi) * 100.0) / 100.0;
  const double p1 = std::round(rng.uniform(r.p1.lo, r.p1.hi) * 100.0) / 100.0;
  if (!(x0 > 0.0 && x1 > x0 && p1 > 0.0 && p1 < p0 && p0 <= 1.0)) return false;
  const double sign = kind == ProblemKind::Gain ? 1.0 : -1.0;
  out = ChoiceProblem{std::move(id), sign * x0, p0, sign * x1, p1, kind};
  return true;
}

}  // namespace

void validate(const GeneratorConfig& c) {
  if (c.n_gain < 1 || c.n_loss < 1 || c.n_respondents < 1)
    throw Error(ErrorKind::InvalidArgument, "generator counts must be at least 1");
  for (const auto* r : {&c.gain, &c.loss}) {
    check_range(r->x0, "x0", false);
    check_range(r->x1, "x1", false);
    check_range(r->p0, "p0", true);
    check_range(r->p1, "p1", true);
  }
  if (!(std::abs(c.trait_correlation) <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "trait correlation must lie in [-1, 1]");
  if (!(c.trait_sd >= 0.0) || !(c.ci_trait_sd >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "trait spreads must be non-negative");
  if (c.max_attempts < 1)
    throw Error(ErrorKind::InvalidArgument, "max_attempts must be at least 1");
}

std::vector<ChoiceProblem> generate_problems(const GeneratorConfig& c) {
  validate(c);
  const std::size_t total = c.n_gain + c.n_loss;
  for (std::size_t attempt = 0; attempt < c.max_attempts; ++attempt) {
    SplitMix64 rng(substream_seed(substream_seed(c.seed, kProblemStream), attempt));
    std::vector<ChoiceProblem> problems;
    for (std::size_t k = 0; k < total; ++k) {
      const bool gain = k < c.n_gain;
      const std::size_t index = gain ? k + 1 : k - c.n_gain + 1;
      ChoiceProblem p;
      bool ok = false;
      for (std::size_t tries = 0; tries < c.max_attempts && !ok; ++tries)
        ok = draw_problem(rng, gain ? c.gain : c.loss,
                          gain ? ProblemKind::Gain : ProblemKind::Loss,
                          numbered(gain ? 'G' : 'L', index, gain ? c.n_gain : c.n_loss), p);
      if (!ok)
        throw Error(ErrorKind::GenerationFailure,
                    "no valid problem within the configured ranges after " +
                        std::to_string(c.max_attempts) + " draws");
      problems.push_back(std::move(p));
    }
    const auto labeling = label_ci_facet(problems, CiFunctions::identity(), CiSplit::median());
    bool halves[2][2] = {{false, false}, {false, false}};
    for (const auto& l : labeling.labels)
      halves[l.type_facet == ProblemKind::Loss][l.ci_facet == CiLevel::High] = true;
    if (halves[0][0] && halves[0][1] && halves[1][0] && halves[1][1]) return problems;
  }
  throw Error(ErrorKind::GenerationFailure,
              "could not place both problem types on both sides of the CI median");
}

ResponseMatrix generate_responses(const std::vector<ChoiceProblem>& problems,
                                  const GeneratorConfig& c) {
  validate(c);
  if (problems.empty()) throw Error(ErrorKind::EmptyInput, "no problems to answer");
  std::vector<double> ci;
  std::vector<std::string> problem_ids;
  for (const auto& p : problems) {
    ci.push_back(challenge_index(p));
    problem_ids.push_back(p.id);
  }
  const double centre = resolve_split(ci, CiSplit::median());
  const double mean = std::accumulate(ci.begin(), ci.end(), 0.0) / static_cast<double>(ci.size());
  double var = 0.0;
  for (double v : ci) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(ci.size()));
  std::vector<double> z(ci.size(), 0.0);
  if (sd > 0.0)
    for (std::size_t j = 0; j < ci.size(); ++j) z[j] = (ci[j] - centre) / sd;

  std::vector<std::string> respondent_ids;
  for (std::size_t r = 0; r < c.n_respondents; ++r)
    respondent_ids.push_back(numbered('R', r + 1, std::max<std::size_t>(c.n_respondents, 100)));
  ResponseMatrix out(respondent_ids, problem_ids);

  const double rho = c.trait_correlation;
  for (std::size_t r = 0; r < c.n_respondents; ++r) {
    SplitMix64 rng(substream_seed(substream_seed(c.seed, kRespondentStream), r));
    const double a = rng.normal(), b = rng.normal(), h = rng.normal();
    const double gain_trait = c.trait_sd * a;
    const double loss_trait = c.trait_sd * (rho * a + std::sqrt(1.0 - rho * rho) * b);
    const double ci_trait = c.ci_trait_sd * h;
    for (std::size_t j = 0; j < problems.size(); ++j) {
      const double trait = problems[j].kind == ProblemKind::Gain ? gain_trait : loss_trait;
      const double logit = c.alpha + c.beta * ci[j] + trait + ci_trait * z[j];
      const double bold = 1.0 / (1.0 + std::exp(-logit));
      out.set(r, j, rng.uniform() < bold ? 2 : 1);
    }
  }
  return out;
}

}  // namespace boldscale
