#pragma once

#include "boldscale/ct_core.hpp"
#include "boldscale/similarity.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace boldscale {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Magnitude ranges for one problem type; loss amounts are negated.
struct TypeRanges {
  Range x0;
  Range x1;
  Range p0;
  Range p1;
};

struct GeneratorConfig {
  std::size_t n_gain = 22;
  std::size_t n_loss = 22;
  std::size_t n_respondents = 126;
  /// logit P(bold) = alpha + beta * CI + type trait + ci_trait * z(CI)
  double alpha = -0.6;
  double beta = 4.0;
  double trait_sd = 2.5;
  /// Correlation between a respondent's gain and loss traits.
  double trait_correlation = 0.0;
  /// Spread of each respondent's sensitivity to standardized CI.
  double ci_trait_sd = 1.6;
  std::uint64_t seed = 1;
  TypeRanges gain{{10.0, 100.0}, {110.0, 1000.0}, {0.5, 1.0}, {0.05, 0.45}};
  TypeRanges loss{{10.0, 100.0}, {110.0, 1000.0}, {0.5, 1.0}, {0.05, 0.45}};
  std::size_t max_attempts = 1000;
};

/// Throws InvalidArgument for counts of zero, empty or reversed ranges,
/// non-positive amounts or probabilities outside (0, 1].
void validate(const GeneratorConfig& config);

/// n_gain gain problems (G01..) then n_loss loss problems (L01..). Amounts
/// are whole numbers and probabilities multiples of 0.01. The set is redrawn
/// until each type has problems on both sides of the CI median split.
std::vector<ChoiceProblem> generate_problems(const GeneratorConfig& config);

/// Responses coded 2 (bold) or 1 (default) for respondents R001...
ResponseMatrix generate_responses(const std::vector<ChoiceProblem>& problems,
                                  const GeneratorConfig& config);

}  // namespace boldscale
