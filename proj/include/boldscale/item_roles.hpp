#pragma once

#include "boldscale/geometry.hpp"
#include "boldscale/posac.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boldscale {

enum class CurveShape { Vertical, Horizontal, L, InvertedL, TwoBend, ThreeBend };

const char* to_string(CurveShape shape) noexcept;

/// Non-increasing staircase on an n x n rank grid. thresholds[x-1] = t(x) in
/// 0..n; the point (x, y) lies in the high region iff y > t(x).
///
/// The boundary runs along y = t(x) + 0.5 within each column and drops at
/// x + 0.5 where t changes. Its segments are the runs of t strictly inside
/// (0, n) plus the jumps; bends = segments - 1.
struct StepCurve {
  int n = 0;
  std::vector<int> thresholds;
  CurveShape shape = CurveShape::Vertical;
  int bends = 0;

  bool high(int x, int y) const { return y > thresholds[static_cast<std::size_t>(x - 1)]; }
  /// Number of grid cells in the high region.
  long high_area() const;
  /// Corner points in rank coordinates (half-integers), left to right.
  std::vector<Point2> bend_points() const;
  /// Cut position of a 0-bend curve: x for Vertical, y for Horizontal.
  double line_position() const;
};

/// Counts bends of a threshold vector; throws if it is not non-increasing or
/// describes no boundary (all cells high or all low).
int count_bends(std::span<const int> thresholds, int n);

/// Builds a curve from thresholds, classifying its shape.
StepCurve make_curve(std::vector<int> thresholds, int n);

/// Points on an n x n grid (x and y in 1..n), with membership and weight.
struct GridItem {
  int n = 0;
  std::vector<RankPoint> points;
  std::vector<bool> high;
  std::vector<double> weight;
};

/// Frequency-weighted L1 distance of every misplaced point to the nearest
/// grid point of the region it belongs to.
double curve_deviation(const StepCurve& curve, const GridItem& item);

struct StepFit {
  StepCurve curve;
  double deviation = 0.0;
};

/// Best curve with at most `bends` bends. Ties: smaller high area, then fewer
/// bends, then lexicographically larger thresholds.
StepFit fit_step_curve(const GridItem& item, int bends);
StepFit fit_step_curve(const PosacSolution& solution, std::size_t item, int bends);

/// High membership of composite `item` over the solution's profiles; the
/// item must take exactly two values.
GridItem grid_item(const PosacSolution& solution, std::size_t item);

struct DeviationsRow {
  std::string item;
  StepFit polar_x;     // best Vertical
  StepFit polar_y;     // best Horizontal
  StepFit l;           // best L (attenuating)
  StepFit inverted_l;  // best InvertedL (accentuating)
  /// Best deviation with at most b bends, b = 0..3.
  std::array<StepFit, 4> best;

  double polar() const { return best[0].deviation; }
  /// 'X' or 'Y'.
  char polar_axis() const;
  /// 'T' (attenuating, L) or 'C' (accentuating, InvertedL).
  char one_bend_tag() const;
  double one_bend() const;
};

struct DeviationsTable {
  std::vector<DeviationsRow> rows;
};

/// A row from bare deviation values; missing cells are +infinity and best[]
/// holds the running minimum.
DeviationsRow deviations_row(std::string item, double polar_x, double polar_y,
                             double l, double inverted_l, double two_bend,
                             double three_bend);

DeviationsTable deviations_table(const PosacSolution& solution,
                                 std::span<const std::string> items,
                                 unsigned threads = 1);

enum class ItemRole { XPolar, YPolar, Attenuating, Accentuating, Promoting, Modifying };

const char* to_string(ItemRole role) noexcept;

constexpr double kRoleTolerance = 0.01;

/// The ordered pair (X, Y) of distinct items with the smallest summed polar
/// deviation takes the polar roles (ties: lowest X index, then Y). Every other
/// item takes the smallest bend budget within kRoleTolerance of its 3-bend
/// optimum; budgets 0 and 1 give Attenuating or Accentuating by the better
/// 1-bend shape (ties: smaller high area, then Attenuating).
std::vector<ItemRole> assign_roles(const DeviationsTable& table);

/// The curve that realizes each item's role.
StepFit role_curve(const DeviationsRow& row, ItemRole role);

struct Cut {
  double position = 0.0;
  std::string source;
};

struct Interval {
  int label = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool closed_hi = false;
  std::vector<std::string> bounded_by;
};

struct AxisIntervals {
  std::vector<Cut> cuts;
  std::vector<Interval> intervals;
  std::vector<std::string> warnings;
};

/// Splits [lo, hi] at the given cuts. Cuts outside the open range are
/// ignored; coincident cuts are merged with a warning. Intervals are
/// half-open except the last and labeled 1.. from low to high.
AxisIntervals split_axis(std::vector<Cut> cuts, double lo = 0.0, double hi = 1.0);

struct IntervalSet {
  AxisIntervals x;
  AxisIntervals y;
};

/// Rank position to [0, 1]: rank 1 -> 0, rank n -> 1.
double to_unit(double rank_position, int n);

/// Cuts each axis at the polar line and the projections of the attenuating
/// and accentuating bends, in unit coordinates.
IntervalSet derive_intervals(const StepCurve& polar_x, const StepCurve& polar_y,
                             const std::optional<StepCurve>& attenuating,
                             const std::optional<StepCurve>& accentuating);

}  // namespace boldscale
