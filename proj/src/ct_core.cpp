#include "boldscale/ct_core.hpp"

#include "boldscale/error.hpp"

#include <algorithm>
#include <cmath>

namespace boldscale {

namespace {

[[noreturn]] void invalid(const ChoiceProblem& p, const std::string& why) {
  throw Error(ErrorKind::InvalidProblem,
              "problem '" + p.id + "': " + why);
}

bool valid_probability(double p) {
  return std::isfinite(p) && p >= kMinProbability && p <= 1.0;
}

}  // namespace

const char* to_string(ProblemKind kind) noexcept {
  return kind == ProblemKind::Gain ? "Gain" : "Loss";
}

const char* to_string(CiLevel level) noexcept {
  return level == CiLevel::High ? "High" : "Low";
}

void validate(const ChoiceProblem& p) {
  if (!std::isfinite(p.x0) || !std::isfinite(p.x1))
    invalid(p, "amounts must be finite");
  if (!valid_probability(p.p0) || !valid_probability(p.p1))
    invalid(p, "probabilities must lie in [1e-9, 1]");
  if (!(p.p1 < p.p0)) invalid(p, "requires p1 < p0");
  if (p.kind == ProblemKind::Gain) {
    if (!(p.x0 > 0.0)) invalid(p, "gain problem requires x0 > 0");
    if (!(p.x1 > p.x0)) invalid(p, "gain problem requires x1 > x0");
  } else {
    if (!(p.x0 < 0.0)) invalid(p, "loss problem requires x0 < 0");
    if (!(p.x1 < p.x0)) invalid(p, "loss problem requires x1 < x0");
  }
}

ChoiceProblem make_problem(std::string id, double x0, double p0, double x1,
                           double p1) {
  ChoiceProblem p{std::move(id), x0, p0, x1, p1, ProblemKind::Gain};
  if (x0 > 0.0 && x1 > 0.0) {
    p.kind = ProblemKind::Gain;
  } else if (x0 < 0.0 && x1 < 0.0) {
    p.kind = ProblemKind::Loss;
  } else {
    invalid(p, "outcomes must be both positive (gain) or both negative (loss)");
  }
  validate(p);
  return p;
}

OptionPair classify_options(const ChoiceProblem& p) {
  validate(p);
  const Option first{p.x0, p.p0};
  const Option second{p.x1, p.p1};
  if (p.kind == ProblemKind::Gain) return {first, second};
  return {second, first};
}

CiFunctions CiFunctions::identity() {
  auto id = [](double t) { return t; };
  return {id, id, id, id};
}

CiFunctions CiFunctions::power(double amount_exponent,
                               double probability_exponent) {
  if (!(amount_exponent > 0.0) || !(probability_exponent > 0.0))
    throw Error(ErrorKind::InvalidArgument,
                "power CI functions need positive exponents");
  auto f = [a = amount_exponent](double t) { return std::pow(t, a); };
  auto w = [b = probability_exponent](double p) { return std::pow(p, b); };
  return {f, f, w, w};
}

void check_monotone(const CiFunctions& fns, double max_amount) {
  constexpr int kSamples = 257;
  auto check = [](const std::function<double(double)>& fn, const char* name,
                  double lo, double hi, bool positive) {
    if (!fn) throw Error(ErrorKind::InvalidArgument,
                         std::string("CI function ") + name + " is unset");
    double prev = fn(lo);
    for (int i = 1; i < kSamples; ++i) {
      const double t = lo + (hi - lo) * i / (kSamples - 1);
      const double v = fn(t);
      if (!std::isfinite(v) || v < prev)
        throw Error(ErrorKind::InvalidArgument,
                    std::string("CI function ") + name +
                        " is not non-decreasing on its sampled domain");
      if (positive && !(v > 0.0))
        throw Error(ErrorKind::InvalidArgument,
                    std::string("CI function ") + name +
                        " must be positive on positive amounts");
      prev = v;
    }
  };
  check(fns.f0, "f0", max_amount * 1e-9, max_amount, true);
  check(fns.f1, "f1", max_amount * 1e-9, max_amount, true);
  check(fns.w0, "w0", kMinProbability, 1.0, false);
  check(fns.w1, "w1", kMinProbability, 1.0, false);
}

double challenge_index(const ChoiceProblem& p, const CiFunctions& fns) {
  validate(p);
  const double weight = fns.w0(p.p0) - fns.w1(p.p1);
  if (!(weight > 0.0))
    throw Error(ErrorKind::InvalidWeighting,
                "problem '" + p.id + "': w0(p0) - w1(p1) must be positive");
  const double denom = fns.f1(std::abs(p.x1));
  if (!(denom > 0.0))
    throw Error(ErrorKind::InvalidWeighting,
                "problem '" + p.id + "': f1(|x1|) must be positive");
  return fns.f0(std::abs(p.x0)) / denom * weight;
}

double resolve_split(std::span<const double> values, CiSplit split) {
  if (split.rule == CiSplit::Rule::Threshold) return split.threshold;
  if (values.empty())
    throw Error(ErrorKind::EmptyInput, "median of an empty value list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

CiLabeling label_ci_facet(std::span<const ChoiceProblem> problems,
                          const CiFunctions& fns, CiSplit split) {
  if (problems.empty())
    throw Error(ErrorKind::EmptyInput, "no problems to label");
  std::vector<double> values;
  values.reserve(problems.size());
  for (const auto& p : problems) values.push_back(challenge_index(p, fns));

  CiLabeling out;
  out.threshold = resolve_split(values, split);
  out.labels.reserve(problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i) {
    out.labels.push_back(
        {problems[i].kind,
         values[i] >= out.threshold ? CiLevel::High : CiLevel::Low,
         values[i]});
  }
  return out;
}

}  // namespace boldscale
