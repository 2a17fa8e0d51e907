#pragma once

#include "boldscale/geometry.hpp"
#include "boldscale/ssa.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace boldscale {

/// A content facet: an ordered list of elements and one element per
/// variable.
struct FacetAssignment {
  std::string name;
  std::vector<std::string> elements;
  std::map<std::string, std::size_t> labels;  // variable id -> element index
};

/// Printed alongside every reported SI so values are never compared against
/// a differently defined index by accident.
inline constexpr const char* kSeparationIndexDefinition =
    "SI = 1 - D / S, where D sums, over points outside their element's band, "
    "the distance from the point's projection on the partition normal to the "
    "nearest boundary of its own band, and S sums the distance of every "
    "projection to the median projection.";

/// Straight parallel partition lines: bands along a unit normal.
struct AxialPartition {
  std::string facet;
  std::vector<std::string> elements;
  /// Direction of the normal in degrees, in [0, 180).
  double theta_deg = 0.0;
  Point2 normal;
  /// k-1 strictly increasing cut positions along the normal.
  std::vector<double> offsets;
  /// Element index occupying each band, lowest projection first.
  std::vector<std::size_t> band_elements;

  std::vector<std::string> ids;
  std::vector<std::size_t> actual;
  std::vector<std::size_t> predicted;
  std::vector<double> deviations;
  std::vector<std::string> deviants;

  double total_deviation = 0.0;
  double spread = 0.0;
  double separation_index = 0.0;
  /// Smallest projection gap straddled by a cut, relative to `spread`.
  double margin = 0.0;
};

struct PartitionSearch {
  double coarse_step_deg = 1.0;
  double fine_step_deg = 0.01;
  double fine_span_deg = 1.0;
};

/// Best axial partition of the plane by `facet`.
///
/// The search runs in the configuration's principal-axis frame, which makes
/// the result independent of how the configuration happens to be rotated.
/// For every angle on a coarse grid (then a fine grid around the best) and
/// every admissible band order, cuts are placed between consecutive distinct
/// projections so as to minimize the total deviation. Candidates rank by SI,
/// then by margin, then by smaller principal-frame angle.
AxialPartition fit_axial_partition(std::span<const std::string> ids,
                                   std::span<const Point2> points,
                                   const FacetAssignment& facet,
                                   const PartitionSearch& search = {});

AxialPartition fit_axial_partition(const SsaConfiguration& config,
                                   const FacetAssignment& facet,
                                   const PartitionSearch& search = {});

struct Superposition {
  std::vector<std::string> ids;
  std::vector<std::string> elements_a;
  std::vector<std::string> elements_b;
  /// (region under a, region under b) per variable.
  std::vector<std::pair<std::size_t, std::size_t>> regions;
  /// counts[a][b], zero cells included.
  std::vector<std::vector<std::size_t>> counts;

  std::size_t occupied_regions() const;
};

Superposition superpose(const AxialPartition& a, const AxialPartition& b);

}  // namespace boldscale
