#include "boldscale/item_roles.hpp"

#include "boldscale/error.hpp"
#include "boldscale/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace boldscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool interior(int level, int n) { return level > 0 && level < n; }

struct Run {
  int level;
  int begin;  // first column, 1-based
  int end;    // last column, inclusive
};

int gap(int x, const Run& run) {
  if (x < run.begin) return run.begin - x;
  if (x > run.end) return x - run.end;
  return 0;
}

double runs_deviation(const std::vector<Run>& runs, const GridItem& item) {
  const int n = item.n;
  double total = 0.0;
  for (std::size_t i = 0; i < item.points.size(); ++i) {
    const int x = item.points[i].x, y = item.points[i].y;
    const Run* home = nullptr;
    for (const auto& run : runs)
      if (x >= run.begin && x <= run.end) home = &run;
    const bool above = y > home->level;
    if (above == item.high[i]) continue;
    int best = std::numeric_limits<int>::max();
    for (const auto& run : runs) {
      if (item.high[i]) {
        if (run.level < n) best = std::min(best, gap(x, run) + std::max(0, run.level + 1 - y));
      } else {
        if (run.level >= 1) best = std::min(best, gap(x, run) + std::max(0, y - run.level));
      }
    }
    if (best == std::numeric_limits<int>::max()) return kInf;
    total += item.weight[i] * best;
  }
  return total;
}

bool better(const StepFit& a, const StepFit& b) {
  if (b.curve.thresholds.empty()) return true;
  if (a.deviation != b.deviation) return a.deviation < b.deviation;
  const long area_a = a.curve.high_area(), area_b = b.curve.high_area();
  if (area_a != area_b) return area_a < area_b;
  if (a.curve.bends != b.curve.bends) return a.curve.bends < b.curve.bends;
  return a.curve.thresholds > b.curve.thresholds;
}

constexpr std::size_t kShapes = 6;

// Best curve of every shape, by enumerating run structures with at most
// max_bends bends.
std::array<StepFit, kShapes> fit_shapes(const GridItem& item, int max_bends) {
  const int n = item.n;
  std::array<StepFit, kShapes> best;
  for (auto& fit : best) fit.deviation = kInf;
  std::vector<Run> runs;

  auto consider = [&] {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (const auto& run : runs)
      for (int x = run.begin; x <= run.end; ++x) t[static_cast<std::size_t>(x - 1)] = run.level;
    StepFit fit;
    fit.deviation = runs_deviation(runs, item);
    if (std::isinf(fit.deviation)) return;
    fit.curve = make_curve(std::move(t), n);
    auto& slot = best[static_cast<std::size_t>(fit.curve.shape)];
    if (better(fit, slot)) slot = std::move(fit);
  };

  auto extend = [&](auto& self, int start, int ceiling, int segments) -> void {
    for (int level = ceiling; level >= 0; --level) {
      const int seg = segments + (interior(level, n) ? 1 : 0) + (runs.empty() ? 0 : 1);
      if (seg > max_bends + 1) continue;
      for (int end = start; end <= n; ++end) {
        runs.push_back({level, start, end});
        if (end == n) {
          if (seg >= 1) consider();
        } else {
          self(self, end + 1, level - 1, seg);
        }
        runs.pop_back();
      }
    }
  };
  extend(extend, 1, n, 0);
  return best;
}

StepFit best_within(const std::array<StepFit, kShapes>& shapes, int bends) {
  StepFit out;
  out.deviation = kInf;
  for (const auto& fit : shapes)
    if (!fit.curve.thresholds.empty() && fit.curve.bends <= bends && better(fit, out))
      out = fit;
  return out;
}

StepFit missing_fit() {
  StepFit fit;
  fit.deviation = kInf;
  return fit;
}

}  // namespace

const char* to_string(CurveShape shape) noexcept {
  switch (shape) {
    case CurveShape::Vertical: return "Vertical";
    case CurveShape::Horizontal: return "Horizontal";
    case CurveShape::L: return "L";
    case CurveShape::InvertedL: return "InvertedL";
    case CurveShape::TwoBend: return "TwoBend";
    case CurveShape::ThreeBend: return "ThreeBend";
  }
  return "?";
}

const char* to_string(ItemRole role) noexcept {
  switch (role) {
    case ItemRole::XPolar: return "XPolar";
    case ItemRole::YPolar: return "YPolar";
    case ItemRole::Attenuating: return "Attenuating";
    case ItemRole::Accentuating: return "Accentuating";
    case ItemRole::Promoting: return "Promoting";
    case ItemRole::Modifying: return "Modifying";
  }
  return "?";
}

long StepCurve::high_area() const {
  long area = 0;
  for (int t : thresholds) area += n - t;
  return area;
}

std::vector<Point2> StepCurve::bend_points() const {
  std::vector<Point2> out;
  for (std::size_t k = 0; k + 1 < thresholds.size(); ++k) {
    if (thresholds[k] == thresholds[k + 1]) continue;
    const double x = static_cast<double>(k) + 1.5;
    if (interior(thresholds[k], n)) out.push_back({x, thresholds[k] + 0.5});
    if (interior(thresholds[k + 1], n)) out.push_back({x, thresholds[k + 1] + 0.5});
  }
  return out;
}

double StepCurve::line_position() const {
  if (shape == CurveShape::Horizontal) return thresholds.front() + 0.5;
  if (shape != CurveShape::Vertical)
    throw Error(ErrorKind::InvalidArgument, "only straight curves have a line position");
  std::size_t last = 0;
  while (last + 1 < thresholds.size() && thresholds[last + 1] == n) ++last;
  return static_cast<double>(last) + 1.5;
}

int count_bends(std::span<const int> t, int n) {
  if (t.empty() || n < 1) throw Error(ErrorKind::InvalidArgument, "empty threshold vector");
  int segments = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < 0 || t[k] > n)
      throw Error(ErrorKind::InvalidArgument, "threshold outside 0..n");
    if (k > 0 && t[k] > t[k - 1])
      throw Error(ErrorKind::InvalidArgument, "thresholds must be non-increasing");
    const bool new_run = k == 0 || t[k] != t[k - 1];
    if (new_run && interior(t[k], n)) ++segments;
    if (k > 0 && t[k] != t[k - 1]) ++segments;
  }
  if (segments == 0)
    throw Error(ErrorKind::InvalidArgument, "thresholds describe no boundary");
  return segments - 1;
}

StepCurve make_curve(std::vector<int> thresholds, int n) {
  StepCurve c;
  c.n = n;
  c.bends = count_bends(thresholds, n);
  const bool jumps = thresholds.front() != thresholds.back();
  switch (c.bends) {
    case 0: c.shape = jumps ? CurveShape::Vertical : CurveShape::Horizontal; break;
    case 1: c.shape = thresholds.front() == n ? CurveShape::InvertedL : CurveShape::L; break;
    case 2: c.shape = CurveShape::TwoBend; break;
    case 3: c.shape = CurveShape::ThreeBend; break;
    default: throw Error(ErrorKind::InvalidArgument, "curves have at most three bends");
  }
  c.thresholds = std::move(thresholds);
  return c;
}

double curve_deviation(const StepCurve& curve, const GridItem& item) {
  if (curve.n != item.n || static_cast<int>(curve.thresholds.size()) != item.n)
    throw Error(ErrorKind::DimensionMismatch, "curve and item use different grids");
  std::vector<Run> runs;
  for (int x = 1; x <= curve.n; ++x) {
    const int level = curve.thresholds[static_cast<std::size_t>(x - 1)];
    if (runs.empty() || runs.back().level != level)
      runs.push_back({level, x, x});
    else
      runs.back().end = x;
  }
  return runs_deviation(runs, item);
}

GridItem grid_item(const PosacSolution& solution, std::size_t item) {
  const auto& profiles = solution.profiles;
  if (profiles.empty() || item >= profiles.front().scores.size())
    throw Error(ErrorKind::InvalidArgument, "item index out of range");
  std::set<int> values;
  for (const auto& p : profiles) values.insert(p.scores[item]);
  if (values.size() < 2)
    throw Error(ErrorKind::ConstantItem,
                "item " + std::to_string(item + 1) + " is constant across profiles");
  if (values.size() > 2)
    throw Error(ErrorKind::InvalidArgument,
                "item " + std::to_string(item + 1) + " is not dichotomous");
  GridItem g;
  g.n = static_cast<int>(profiles.size());
  g.points = solution.coords;
  for (const auto& p : profiles) {
    g.high.push_back(p.scores[item] == *values.rbegin());
    g.weight.push_back(static_cast<double>(p.frequency));
  }
  return g;
}

StepFit fit_step_curve(const GridItem& item, int bends) {
  if (bends < 0 || bends > 3)
    throw Error(ErrorKind::InvalidArgument, "bend budget must be 0..3");
  if (item.n < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 ranks");
  if (std::find(item.high.begin(), item.high.end(), true) == item.high.end() ||
      std::find(item.high.begin(), item.high.end(), false) == item.high.end())
    throw Error(ErrorKind::ConstantItem, "item is constant across points");
  return best_within(fit_shapes(item, bends), bends);
}

StepFit fit_step_curve(const PosacSolution& solution, std::size_t item, int bends) {
  return fit_step_curve(grid_item(solution, item), bends);
}

char DeviationsRow::polar_axis() const {
  return polar_y.deviation < polar_x.deviation ? 'Y' : 'X';
}

double DeviationsRow::one_bend() const {
  return std::min(l.deviation, inverted_l.deviation);
}

char DeviationsRow::one_bend_tag() const {
  if (l.deviation != inverted_l.deviation) return l.deviation < inverted_l.deviation ? 'T' : 'C';
  return inverted_l.curve.high_area() < l.curve.high_area() ? 'C' : 'T';
}

DeviationsRow deviations_row(std::string item, double polar_x, double polar_y, double l,
                             double inverted_l, double two_bend, double three_bend) {
  DeviationsRow row;
  row.item = std::move(item);
  row.polar_x.deviation = polar_x;
  row.polar_y.deviation = polar_y;
  row.l.deviation = l;
  row.inverted_l.deviation = inverted_l;
  row.best[0].deviation = std::min(polar_x, polar_y);
  row.best[1].deviation = std::min({row.best[0].deviation, l, inverted_l});
  row.best[2].deviation = std::min(row.best[1].deviation, two_bend);
  row.best[3].deviation = std::min(row.best[2].deviation, three_bend);
  return row;
}

DeviationsTable deviations_table(const PosacSolution& solution,
                                 std::span<const std::string> items, unsigned threads) {
  if (items.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 items");
  if (solution.profiles.empty() || solution.profiles.front().scores.size() != items.size())
    throw Error(ErrorKind::DimensionMismatch, "item names do not match profile length");
  DeviationsTable table;
  table.rows.resize(items.size());
  parallel_for(items.size(), threads, [&](std::size_t i) {
    const auto grid = grid_item(solution, i);
    const auto shapes = fit_shapes(grid, 3);
    DeviationsRow row;
    row.item = items[i];
    auto pick = [&](CurveShape s) {
      const auto& fit = shapes[static_cast<std::size_t>(s)];
      return fit.curve.thresholds.empty() ? missing_fit() : fit;
    };
    row.polar_x = pick(CurveShape::Vertical);
    row.polar_y = pick(CurveShape::Horizontal);
    row.l = pick(CurveShape::L);
    row.inverted_l = pick(CurveShape::InvertedL);
    for (int b = 0; b <= 3; ++b) row.best[static_cast<std::size_t>(b)] = best_within(shapes, b);
    table.rows[i] = std::move(row);
  });
  return table;
}

std::vector<ItemRole> assign_roles(const DeviationsTable& table) {
  const auto& rows = table.rows;
  if (rows.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 items");
  std::size_t px = 0, py = 1;
  double best = kInf;
  bool found = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      const double sum = rows[i].polar_x.deviation + rows[j].polar_y.deviation;
      if (!found || sum < best) {
        best = sum;
        px = i;
        py = j;
        found = true;
      }
    }
  }
  std::vector<ItemRole> roles(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == px) {
      roles[i] = ItemRole::XPolar;
      continue;
    }
    if (i == py) {
      roles[i] = ItemRole::YPolar;
      continue;
    }
    const auto& row = rows[i];
    const double limit = row.best[3].deviation * (1.0 + kRoleTolerance) + 1e-12;
    int budget = 3;
    for (int b = 0; b <= 3; ++b) {
      if (row.best[static_cast<std::size_t>(b)].deviation <= limit) {
        budget = b;
        break;
      }
    }
    if (budget <= 1)
      roles[i] = row.one_bend_tag() == 'C' ? ItemRole::Accentuating : ItemRole::Attenuating;
    else
      roles[i] = budget == 2 ? ItemRole::Promoting : ItemRole::Modifying;
  }
  return roles;
}

StepFit role_curve(const DeviationsRow& row, ItemRole role) {
  switch (role) {
    case ItemRole::XPolar: return row.polar_x;
    case ItemRole::YPolar: return row.polar_y;
    case ItemRole::Attenuating: return row.l;
    case ItemRole::Accentuating: return row.inverted_l;
    case ItemRole::Promoting: return row.best[2];
    case ItemRole::Modifying: return row.best[3];
  }
  return row.best[3];
}

AxisIntervals split_axis(std::vector<Cut> cuts, double lo, double hi) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "empty axis range");
  AxisIntervals out;
  std::stable_sort(cuts.begin(), cuts.end(),
                   [](const Cut& a, const Cut& b) { return a.position < b.position; });
  constexpr double kEps = 1e-12;
  for (auto& cut : cuts) {
    if (cut.position <= lo + kEps || cut.position >= hi - kEps) {
      out.warnings.push_back("cut from " + cut.source + " lies on the axis boundary; ignored");
      continue;
    }
    if (!out.cuts.empty() && cut.position - out.cuts.back().position <= kEps) {
      out.warnings.push_back("cuts from " + out.cuts.back().source + " and " + cut.source +
                             " coincide; intervals merged");
      out.cuts.back().source += "+" + cut.source;
      continue;
    }
    out.cuts.push_back(std::move(cut));
  }
  double start = lo;
  std::string lower;
  for (std::size_t k = 0; k <= out.cuts.size(); ++k) {
    Interval iv;
    iv.label = static_cast<int>(k) + 1;
    iv.lo = start;
    iv.hi = k < out.cuts.size() ? out.cuts[k].position : hi;
    iv.closed_hi = k == out.cuts.size();
    if (!lower.empty()) iv.bounded_by.push_back(lower);
    if (k < out.cuts.size()) iv.bounded_by.push_back(out.cuts[k].source);
    out.intervals.push_back(std::move(iv));
    if (k < out.cuts.size()) {
      start = out.cuts[k].position;
      lower = out.cuts[k].source;
    }
  }
  return out;
}

double to_unit(double rank_position, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "rank grid needs at least 2 ranks");
  return (rank_position - 1.0) / (n - 1);
}

IntervalSet derive_intervals(const StepCurve& polar_x, const StepCurve& polar_y,
                             const std::optional<StepCurve>& attenuating,
                             const std::optional<StepCurve>& accentuating) {
  if (polar_x.shape != CurveShape::Vertical || polar_y.shape != CurveShape::Horizontal)
    throw Error(ErrorKind::InvalidArgument, "polar curves must be vertical and horizontal");
  if (attenuating && attenuating->shape != CurveShape::L)
    throw Error(ErrorKind::InvalidArgument, "attenuating curve must be L-shaped");
  if (accentuating && accentuating->shape != CurveShape::InvertedL)
    throw Error(ErrorKind::InvalidArgument, "accentuating curve must be inverted-L-shaped");
  const int n = polar_x.n;
  for (const auto* c : {&polar_y, attenuating ? &*attenuating : nullptr,
                        accentuating ? &*accentuating : nullptr})
    if (c && c->n != n)
      throw Error(ErrorKind::DimensionMismatch, "curves come from different grids");

  std::vector<Cut> xs{{to_unit(polar_x.line_position(), n), "polar_x"}};
  std::vector<Cut> ys{{to_unit(polar_y.line_position(), n), "polar_y"}};
  auto project = [&](const std::optional<StepCurve>& c, const char* name) {
    if (!c) return;
    for (const auto& p : c->bend_points()) {
      xs.push_back({to_unit(p.x, n), name});
      ys.push_back({to_unit(p.y, n), name});
    }
  };
  project(attenuating, "attenuating");
  project(accentuating, "accentuating");
  return {split_axis(std::move(xs)), split_axis(std::move(ys))};
}

}  // namespace boldscale
