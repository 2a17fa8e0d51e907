#pragma once

#include "boldscale/geometry.hpp"
#include "boldscale/similarity.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace boldscale {

/// How tied similarities constrain distances.
///   Primary:   ties impose no order; within a tie block distances are free.
///   Secondary: tied similarities should map to equal distances.
enum class TieApproach { Primary, Secondary };

const char* to_string(TieApproach ties) noexcept;

struct SsaOptions {
  int dims = 2;
  std::uint64_t seed = 1;
  int restarts = 10;
  int max_sweeps = 500;
  /// Stop once a sweep improves the normalized loss by less than this.
  double tolerance = 1e-10;
  /// Tie handling inside the optimizer. The reported alienation always uses
  /// the primary approach.
  TieApproach optimizer_ties = TieApproach::Secondary;
  /// Separation between successive similarity levels demanded during the
  /// isotonic phase, relative to the RMS distance. Keeps the optimizer off
  /// the boundary of the order cone where near-equal distances flip order.
  double order_gap = 1e-5;
  unsigned threads = 1;
};

/// Smallest Space Analysis result: one planar point per variable, centered
/// at the origin with unit RMS distance from it and rotated to principal
/// axes.
struct SsaConfiguration {
  std::vector<std::string> ids;
  std::vector<Point2> points;
  double alienation = 0.0;
  /// Kruskal stress-2 against the same isotonic distances.
  double stress = 0.0;
  int dims = 2;
  std::uint64_t seed = 0;
  int restarts_used = 0;
  int best_restart = 0;
  int sweeps = 0;
  int max_sweeps = 0;
  double tolerance = 0.0;
};

/// Nonmetric embedding: alternates an isotonic fit of distances against
/// descending similarity order with a majorization (Guttman transform)
/// step, from `restarts` seeded random starts, keeping the lowest loss
/// (ties: lowest restart index).
SsaConfiguration embed(const SimilarityMatrix& sim, const SsaOptions& options);
SsaConfiguration embed(const SimilarityMatrix& sim, int dims,
                       std::uint64_t seed, int restarts);

/// Isotonic "disparities" d* for the given distances: non-decreasing along
/// descending similarity. Pairs are (i<j) in row-major order.
/// A positive `gap` additionally keeps consecutive similarity levels at
/// least that far apart.
std::vector<double> disparities(std::span<const double> distances,
                                const SimilarityMatrix& sim, TieApproach ties,
                                double gap = 0.0);

/// sqrt(sum (d - d*)^2 / sum d^2) over i<j.
double alienation(std::span<const Point2> points, const SimilarityMatrix& sim,
                  TieApproach ties = TieApproach::Primary);
double alienation(const SsaConfiguration& config, const SimilarityMatrix& sim);

/// Pairs of variable pairs with r_ij > r_kl but d_ij > d_kl.
std::size_t monotone_violations(std::span<const Point2> points,
                                const SimilarityMatrix& sim);

/// Seeded random start used by restart `restart` of `embed`.
std::vector<Point2> random_start(std::size_t n, std::uint64_t seed,
                                 int restart);

/// One optimizer sweep in place; returns the normalized loss
/// (squared alienation under `ties`) of the updated points.
double nonmetric_sweep(std::vector<Point2>& points, const SimilarityMatrix& sim,
                       TieApproach ties = TieApproach::Secondary);

/// Centers, scales to unit RMS radius and rotates to principal axes, with
/// the sign of each axis fixed so its largest |coordinate| is positive.
void normalize_configuration(std::vector<Point2>& points);

}  // namespace boldscale
