#include "boldscale/facet_partition.hpp"

#include "boldscale/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace boldscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

double wrap180(double deg) {
  double w = std::fmod(deg, 180.0);
  if (w < 0.0) w += 180.0;
  // fmod can round 180 - tiny up to exactly 180.
  return w >= 180.0 ? 0.0 : w;
}

std::vector<std::vector<std::size_t>> band_orders(std::size_t k) {
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  if (k <= 4) {
    do out.push_back(order);
    while (std::next_permutation(order.begin(), order.end()));
  } else {
    out.push_back(order);
    std::reverse(order.begin(), order.end());
    out.push_back(order);
  }
  return out;
}

struct Candidate {
  bool valid = false;
  double theta = 0.0;  // principal frame, degrees
  double si = -kInf;
  double margin = 0.0;
  double total = 0.0;
  double spread = 0.0;
  std::vector<std::size_t> order;
  std::vector<double> cuts;  // principal frame projections
  std::vector<double> projections;
};

bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.si != b.si) return a.si > b.si;
  if (a.margin != b.margin) return a.margin > b.margin;
  return a.theta < b.theta;
}

class Evaluator {
public:
  Evaluator(std::span<const Point2> pts, std::span<const std::size_t> labels,
            std::size_t k)
      : pts_(pts), labels_(labels), k_(k), orders_(band_orders(k)) {}

  Candidate at(double theta) const {
    Candidate best;
    const double c = std::cos(deg2rad(theta));
    const double s = std::sin(deg2rad(theta));
    const std::size_t n = pts_.size();
    std::vector<double> proj(n);
    for (std::size_t i = 0; i < n; ++i) proj[i] = c * pts_[i].x + s * pts_[i].y;

    std::vector<double> sorted = proj;
    std::sort(sorted.begin(), sorted.end());
    const double median = n % 2 ? sorted[n / 2]
                                : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double spread = 0.0;
    for (double v : proj) spread += std::abs(v - median);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!(spread > 0.0) || sorted.size() < k_) return best;

    const std::size_t m = sorted.size() - 1;  // candidate cut positions
    std::vector<double> mids(m), gaps(m);
    for (std::size_t q = 0; q < m; ++q) {
      mids[q] = 0.5 * (sorted[q] + sorted[q + 1]);
      gaps[q] = sorted[q + 1] - sorted[q];
    }

    for (const auto& order : orders_) {
      std::vector<std::size_t> band_of(k_);
      for (std::size_t b = 0; b < k_; ++b) band_of[order[b]] = b;

      // cost[j][q]: deviation charged to cut j placed at mids[q] by the
      // points of the two bands it separates.
      std::vector<std::vector<double>> cost(k_ - 1, std::vector<double>(m, 0.0));
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b = band_of[labels_[i]];
        for (std::size_t q = 0; q < m; ++q) {
          if (b < k_ - 1) cost[b][q] += std::max(0.0, proj[i] - mids[q]);
          if (b > 0) cost[b - 1][q] += std::max(0.0, mids[q] - proj[i]);
        }
      }

      // Cuts at strictly increasing candidate indices.
      std::vector<std::vector<double>> dp(k_ - 1, std::vector<double>(m, kInf));
      std::vector<std::vector<std::size_t>> from(k_ - 1,
                                                 std::vector<std::size_t>(m, 0));
      dp[0] = cost[0];
      for (std::size_t j = 1; j < k_ - 1; ++j) {
        double run = kInf;
        std::size_t arg = 0;
        for (std::size_t q = 1; q < m; ++q) {
          if (dp[j - 1][q - 1] < run) {
            run = dp[j - 1][q - 1];
            arg = q - 1;
          }
          if (run < kInf) {
            dp[j][q] = cost[j][q] + run;
            from[j][q] = arg;
          }
        }
      }
      std::size_t q_best = 0;
      for (std::size_t q = 1; q < m; ++q)
        if (dp[k_ - 2][q] < dp[k_ - 2][q_best]) q_best = q;
      if (!(dp[k_ - 2][q_best] < kInf)) continue;

      std::vector<std::size_t> idx(k_ - 1);
      idx[k_ - 2] = q_best;
      for (std::size_t j = k_ - 2; j > 0; --j) idx[j - 1] = from[j][idx[j]];

      Candidate cand;
      cand.valid = true;
      cand.theta = theta;
      cand.total = dp[k_ - 2][q_best];
      cand.spread = spread;
      cand.si = std::clamp(1.0 - cand.total / spread, 0.0, 1.0);
      double min_gap = kInf;
      for (std::size_t q : idx) min_gap = std::min(min_gap, gaps[q]);
      cand.margin = min_gap / spread;
      cand.order = order;
      for (std::size_t q : idx) cand.cuts.push_back(mids[q]);
      cand.projections = proj;
      if (better(cand, best)) best = std::move(cand);
    }
    return best;
  }

private:
  std::span<const Point2> pts_;
  std::span<const std::size_t> labels_;
  std::size_t k_;
  std::vector<std::vector<std::size_t>> orders_;
};

}  // namespace

AxialPartition fit_axial_partition(std::span<const std::string> ids,
                                   std::span<const Point2> points,
                                   const FacetAssignment& facet,
                                   const PartitionSearch& search) {
  const std::size_t k = facet.elements.size();
  if (k < 2)
    throw Error(ErrorKind::InvalidFacet,
                "facet '" + facet.name + "' needs at least two elements");
  if (ids.size() != points.size())
    throw Error(ErrorKind::DimensionMismatch, "ids and points differ in count");
  if (facet.labels.size() != ids.size())
    throw Error(ErrorKind::InvalidFacet,
                "facet '" + facet.name + "' labels " +
                    std::to_string(facet.labels.size()) +
                    " variables, configuration has " +
                    std::to_string(ids.size()));
  if (!(search.coarse_step_deg > 0.0) || !(search.fine_step_deg > 0.0))
    throw Error(ErrorKind::InvalidArgument, "angle steps must be positive");

  std::vector<std::size_t> labels(ids.size());
  std::vector<std::size_t> per_element(k, 0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto it = facet.labels.find(ids[i]);
    if (it == facet.labels.end())
      throw Error(ErrorKind::InvalidFacet, "facet '" + facet.name +
                                               "' has no label for '" + ids[i] +
                                               "'");
    if (it->second >= k)
      throw Error(ErrorKind::InvalidFacet,
                  "facet '" + facet.name + "' label out of range for '" +
                      ids[i] + "'");
    labels[i] = it->second;
    ++per_element[it->second];
  }
  for (std::size_t e = 0; e < k; ++e)
    if (per_element[e] == 0)
      throw Error(ErrorKind::InvalidFacet, "facet '" + facet.name +
                                               "' element '" +
                                               facet.elements[e] +
                                               "' has no variables");

  // Principal-axis frame.
  const auto n = static_cast<double>(points.size());
  Point2 centroid;
  for (const auto& p : points) {
    centroid.x += p.x / n;
    centroid.y += p.y / n;
  }
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - centroid.x, dy = p.y - centroid.y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double phi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  std::vector<Point2> frame(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dx = points[i].x - centroid.x, dy = points[i].y - centroid.y;
    frame[i] = {std::cos(phi) * dx + std::sin(phi) * dy,
                -std::sin(phi) * dx + std::cos(phi) * dy};
  }

  const Evaluator eval(frame, labels, k);
  Candidate best;
  const auto coarse = static_cast<int>(std::ceil(180.0 / search.coarse_step_deg));
  for (int a = 0; a < coarse; ++a) {
    auto cand = eval.at(a * search.coarse_step_deg);
    if (better(cand, best)) best = std::move(cand);
  }
  if (!best.valid)
    throw Error(ErrorKind::InvalidFacet,
                "facet '" + facet.name +
                    "': no direction separates the points into " +
                    std::to_string(k) + " bands");
  const double center = best.theta;
  const auto fine = static_cast<int>(std::round(search.fine_span_deg / search.fine_step_deg));
  for (int a = -fine; a <= fine; ++a) {
    auto cand = eval.at(wrap180(center + a * search.fine_step_deg));
    if (better(cand, best)) best = std::move(cand);
  }

  AxialPartition out;
  out.facet = facet.name;
  out.elements = facet.elements;
  out.theta_deg = wrap180(best.theta + phi * 180.0 / std::numbers::pi);
  out.normal = {std::cos(deg2rad(out.theta_deg)), std::sin(deg2rad(out.theta_deg))};
  // Frame projections differ from plane projections by the centroid's.
  const double shift_sign =
      std::cos(deg2rad(out.theta_deg) - deg2rad(best.theta) - phi) > 0.0 ? 1.0
                                                                         : -1.0;
  const double centroid_proj = out.normal.x * centroid.x + out.normal.y * centroid.y;
  out.band_elements = best.order;
  if (shift_sign < 0.0) std::reverse(out.band_elements.begin(), out.band_elements.end());
  for (double cut : best.cuts) out.offsets.push_back(shift_sign * cut + centroid_proj);
  std::sort(out.offsets.begin(), out.offsets.end());

  out.ids.assign(ids.begin(), ids.end());
  out.actual = labels;
  std::vector<std::size_t> band_of(k);
  for (std::size_t b = 0; b < k; ++b) band_of[best.order[b]] = b;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double s = best.projections[i];
    std::size_t band = 0;
    while (band < k - 1 && s > best.cuts[band]) ++band;
    out.predicted.push_back(best.order[band]);
    const std::size_t own = band_of[labels[i]];
    const double lo = own > 0 ? best.cuts[own - 1] : -kInf;
    const double hi = own < k - 1 ? best.cuts[own] : kInf;
    const double dev = std::max(0.0, lo - s) + std::max(0.0, s - hi);
    out.deviations.push_back(dev);
    if (out.predicted.back() != labels[i]) out.deviants.push_back(ids[i]);
  }
  out.total_deviation = best.total;
  out.spread = best.spread;
  out.separation_index = best.si;
  out.margin = best.margin;
  return out;
}

AxialPartition fit_axial_partition(const SsaConfiguration& config,
                                   const FacetAssignment& facet,
                                   const PartitionSearch& search) {
  return fit_axial_partition(config.ids, config.points, facet, search);
}

std::size_t Superposition::occupied_regions() const {
  std::size_t count = 0;
  for (const auto& row : counts)
    for (std::size_t c : row) count += c > 0;
  return count;
}

Superposition superpose(const AxialPartition& a, const AxialPartition& b) {
  if (a.ids != b.ids)
    throw Error(ErrorKind::DimensionMismatch,
                "superposed partitions must cover the same variables");
  Superposition out;
  out.ids = a.ids;
  out.elements_a = a.elements;
  out.elements_b = b.elements;
  out.counts.assign(a.elements.size(), std::vector<std::size_t>(b.elements.size(), 0));
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    out.regions.emplace_back(a.predicted[i], b.predicted[i]);
    ++out.counts[a.predicted[i]][b.predicted[i]];
  }
  return out;
}

}  // namespace boldscale
