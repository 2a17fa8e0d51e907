#pragma once

#include "boldscale/facet_partition.hpp"
#include "boldscale/similarity.hpp"
#include "boldscale/ssa.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boldscale {

/// Representative variables of one region: the non-deviant members of
/// `element`, thinned to `k` by greedy max-min dispersion. The first pick is
/// the candidate nearest the candidates' centroid; each further pick
/// maximizes its distance to the nearest already chosen point. Ties go to
/// the smaller id.
std::vector<std::string> select_representatives(const SsaConfiguration& config,
                                                const AxialPartition& partition,
                                                std::string_view element,
                                                std::size_t k);

struct DichotomizeRule {
  enum class Kind { MedianSplit, Threshold };
  Kind kind = Kind::MedianSplit;
  double threshold = 0.0;

  static DichotomizeRule median_split() { return {}; }
  static DichotomizeRule at(double threshold) {
    return {Kind::Threshold, threshold};
  }
};

/// MeanScale rescales a partially answered member set to the full member
/// count; Exclude drops respondents with any missing member.
enum class MissingPolicy { MeanScale, Exclude };

const char* to_string(MissingPolicy policy) noexcept;

struct CompositeSpec {
  std::string construct;
  std::vector<std::string> members;
  DichotomizeRule::Kind rule = DichotomizeRule::Kind::MedianSplit;
  /// Scaled sums >= threshold are coded 2.
  double threshold = 0.0;
  MissingPolicy missing = MissingPolicy::MeanScale;
};

struct CompositeColumn {
  CompositeSpec spec;
  /// Scaled member sum per respondent (nullopt when excluded).
  std::vector<std::optional<double>> sums;
  /// 1 (cautious) or 2 (bold); nullopt when excluded.
  std::vector<std::optional<int>> codes;
};

/// 2 iff value >= threshold; the threshold is the median under MedianSplit.
std::vector<int> dichotomize(std::span<const double> values,
                             DichotomizeRule rule, double* threshold_out = nullptr);

CompositeColumn make_composite(const ResponseMatrix& responses,
                               std::span<const std::string> members,
                               DichotomizeRule rule,
                               MissingPolicy missing = MissingPolicy::MeanScale,
                               std::string construct = {});

/// Respondents x constructs, every value 1 or 2.
struct CompositeMatrix {
  std::vector<std::string> respondent_ids;
  std::vector<std::string> constructs;
  std::vector<int> values;  // row-major

  std::size_t rows() const noexcept { return respondent_ids.size(); }
  std::size_t cols() const noexcept { return constructs.size(); }
  int at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
};

/// Joins composite columns, dropping respondents excluded from any column.
CompositeMatrix assemble_composites(std::span<const std::string> respondent_ids,
                                    std::span<const CompositeColumn> columns);

}  // namespace boldscale
