#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace boldscale {

enum class ProblemKind { Gain, Loss };

const char* to_string(ProblemKind kind) noexcept;

/// Smallest probability accepted for either option.
inline constexpr double kMinProbability = 1e-9;

/// A binary gamble [(x0, p0), (x1, p1)] without mixed outcomes.
///
/// Gain problems satisfy x1 > x0 > 0, loss problems x1 < x0 < 0, and both
/// require 0 < p1 < p0 <= 1. The kind is derived from the outcome signs.
struct ChoiceProblem {
  std::string id;
  double x0 = 0.0;
  double p0 = 0.0;
  double x1 = 0.0;
  double p1 = 0.0;
  ProblemKind kind = ProblemKind::Gain;
};

/// Builds a problem, deriving its kind, and validates it.
ChoiceProblem make_problem(std::string id, double x0, double p0, double x1,
                           double p1);

/// Throws Error(InvalidProblem) naming the violated constraint.
void validate(const ChoiceProblem& problem);

struct Option {
  double amount = 0.0;
  double probability = 0.0;

  friend bool operator==(const Option&, const Option&) = default;
};

struct OptionPair {
  Option default_option;
  Option bold_option;
};

/// Default option: the smaller sure-ish gain, or the larger unlikely loss.
OptionPair classify_options(const ChoiceProblem& problem);

/// Monotone transforms entering the challenge index. f0/f1 act on absolute
/// amounts, w0/w1 on probabilities.
struct CiFunctions {
  std::function<double(double)> f0;
  std::function<double(double)> f1;
  std::function<double(double)> w0;
  std::function<double(double)> w1;

  static CiFunctions identity();
  /// f(t) = t^amount_exponent, w(p) = p^probability_exponent; both > 0.
  static CiFunctions power(double amount_exponent, double probability_exponent);
};

/// Spot-checks that every function is non-decreasing on a sampling grid and
/// that f0, f1 stay positive on positive amounts.
void check_monotone(const CiFunctions& fns, double max_amount = 1e6);

/// (f0(|x0|) / f1(|x1|)) * (w0(p0) - w1(p1)).
double challenge_index(const ChoiceProblem& problem,
                       const CiFunctions& fns = CiFunctions::identity());

enum class CiLevel { Low, High };

const char* to_string(CiLevel level) noexcept;

struct CiSplit {
  enum class Rule { Median, Threshold };
  Rule rule = Rule::Median;
  double threshold = 0.0;

  static CiSplit median() { return {}; }
  static CiSplit at(double threshold) { return {Rule::Threshold, threshold}; }
};

struct FacetLabels {
  ProblemKind type_facet = ProblemKind::Gain;
  CiLevel ci_facet = CiLevel::Low;
  double ci_value = 0.0;
};

struct CiLabeling {
  std::vector<FacetLabels> labels;
  /// Values >= threshold are High.
  double threshold = 0.0;
};

/// Threshold the split rule resolves to on these values.
double resolve_split(std::span<const double> values, CiSplit split);

CiLabeling label_ci_facet(std::span<const ChoiceProblem> problems,
                          const CiFunctions& fns, CiSplit split);

}  // namespace boldscale
