#pragma once

#include "boldscale/composites.hpp"
#include "boldscale/ct_core.hpp"
#include "boldscale/facet_partition.hpp"
#include "boldscale/item_roles.hpp"
#include "boldscale/posac.hpp"
#include "boldscale/similarity.hpp"
#include "boldscale/ssa.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace boldscale {

struct PipelineConfig {
  std::uint64_t seed = 1;
  int ssa_restarts = 10;
  int posac_restarts = 32;
  CiSplit ci_split = CiSplit::median();
  /// "identity" or "power".
  std::string ci_functions = "identity";
  double amount_exponent = 1.0;
  double probability_exponent = 1.0;
  std::size_t k_representatives = 6;
  SimilarityKind similarity = SimilarityKind::WeakMonotonicity;
  MissingPolicy missing = MissingPolicy::MeanScale;

  CiFunctions functions() const;
};

/// One composite construct and the partition region it draws from.
struct ConstructSource {
  std::string construct;
  std::string facet;
  std::string element;
};

/// Gain, Loss, LoCI, HiCI.
const std::vector<ConstructSource>& default_constructs();

struct PipelineResult {
  PipelineConfig config;
  std::vector<ChoiceProblem> problems;
  std::vector<double> ci;
  CiLabeling labeling;
  ResponseMatrix responses;
  SimilarityMatrix similarity;
  SsaConfiguration ssa;
  AxialPartition type_partition;
  AxialPartition ci_partition;
  std::vector<CompositeColumn> composites;
  CompositeMatrix composite_matrix;
  PosacSolution posac;
  DeviationsTable deviations;
  std::vector<ItemRole> roles;
  IntervalSet intervals;
};

/// Problems and responses through every stage. Errors keep their kind and
/// are prefixed with the failing stage's name.
PipelineResult run_pipeline(const std::vector<ChoiceProblem>& problems,
                            const ResponseMatrix& responses,
                            const PipelineConfig& config, unsigned threads = 1);

/// Responses with columns in problem order; throws IdMismatch if the id sets
/// differ.
ResponseMatrix align_responses(const std::vector<ChoiceProblem>& problems,
                               const ResponseMatrix& responses);

}  // namespace boldscale
