#include "boldscale/ssa.hpp"

#include "boldscale/error.hpp"
#include "boldscale/isotonic.hpp"
#include "boldscale/parallel.hpp"
#include "boldscale/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace boldscale {

namespace {

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

std::vector<double> pair_distances(std::span<const Point2> pts) {
  std::vector<double> d;
  d.reserve(pair_count(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d.push_back(distance(pts[i], pts[j]));
  return d;
}

std::vector<double> pair_similarities(const SimilarityMatrix& sim) {
  std::vector<double> s;
  const std::size_t n = sim.size();
  s.reserve(pair_count(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s.push_back(sim(i, j));
  return s;
}

double normalized_loss(std::span<const double> d, std::span<const double> fit) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    num += (d[k] - fit[k]) * (d[k] - fit[k]);
    den += d[k] * d[k];
  }
  return den > 0.0 ? num / den : 0.0;
}

void require_match(std::size_t points, const SimilarityMatrix& sim) {
  if (points != sim.size())
    throw Error(ErrorKind::DimensionMismatch,
                "configuration has " + std::to_string(points) +
                    " points but the similarity matrix " +
                    std::to_string(sim.size()) + " variables");
}

struct RestartResult {
  std::vector<Point2> points;
  double loss = 0.0;
  int sweeps = 0;
};

// Guttman rank images: the sorted distances reassigned along descending
// similarity. Tie blocks receive their block mean (secondary) or keep the
// within-block distance order (primary).
std::vector<double> rank_images(std::span<const double> distances,
                                const SimilarityMatrix& sim, TieApproach ties);

enum class Target { RankImage, Isotonic };

// One majorization step toward the current target distances; returns the
// normalized isotonic loss of the updated points.
double sweep(std::vector<Point2>& points, const SimilarityMatrix& sim,
             TieApproach ties, Target mode, double gap);

RestartResult run_restart(const SimilarityMatrix& sim, const SsaOptions& opt,
                          int restart) {
  RestartResult r;
  r.points = random_start(sim.size(), opt.seed, restart);
  const auto d0 = pair_distances(r.points);
  double loss = normalized_loss(d0, rank_images(d0, sim, opt.optimizer_ties));
  // Rank images first: they keep distinct similarities on distinct
  // distances and steer away from tied (degenerate) solutions. The isotonic
  // phase then polishes the least-squares fit.
  Target mode = Target::RankImage;
  for (int s = 0; s < opt.max_sweeps; ++s) {
    const double next =
        sweep(r.points, sim, opt.optimizer_ties, mode, opt.order_gap);
    r.sweeps = s + 1;
    const double gain = std::sqrt(loss) - std::sqrt(next);
    loss = next;
    if (std::abs(gain) < opt.tolerance || s + 1 == opt.max_sweeps / 2) {
      if (mode == Target::Isotonic) break;
      mode = Target::Isotonic;
      const auto d = pair_distances(r.points);
      loss = normalized_loss(d, disparities(d, sim, opt.optimizer_ties));
    }
  }
  r.loss = loss;
  return r;
}

}  // namespace

const char* to_string(TieApproach ties) noexcept {
  return ties == TieApproach::Primary ? "primary" : "secondary";
}

std::vector<double> disparities(std::span<const double> distances,
                                const SimilarityMatrix& sim, TieApproach ties,
                                double gap) {
  const auto sims = pair_similarities(sim);
  if (sims.size() != distances.size())
    throw Error(ErrorKind::DimensionMismatch,
                "distance and similarity pair counts differ");
  const std::size_t m = sims.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  // Descending similarity; inside a tie block ascending distance (which
  // realizes the primary approach), then pair index for determinism.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sims[a] != sims[b]) return sims[a] > sims[b];
    if (distances[a] != distances[b]) return distances[a] < distances[b];
    return a < b;
  });

  // A positive gap fits d* - offset instead, where the offset grows by
  // `gap` at every change of similarity level. That projects onto
  // {d*: consecutive similarity levels at least `gap` apart}.
  std::vector<double> offset(m, 0.0);
  for (std::size_t k = 1; k < m; ++k)
    offset[k] = offset[k - 1] + (sims[order[k]] != sims[order[k - 1]] ? gap : 0.0);

  std::vector<double> fitted(m);
  if (ties == TieApproach::Primary) {
    std::vector<double> seq(m);
    for (std::size_t k = 0; k < m; ++k) seq[k] = distances[order[k]] - offset[k];
    const auto iso = isotonic_increasing(seq);
    for (std::size_t k = 0; k < m; ++k) fitted[order[k]] = iso[k] + offset[k];
    return fitted;
  }

  std::vector<double> means, weights;
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k < m;) {
    std::size_t e = k;
    double sum = 0.0;
    while (e < m && sims[order[e]] == sims[order[k]]) sum += distances[order[e++]];
    starts.push_back(k);
    means.push_back(sum / static_cast<double>(e - k) - offset[k]);
    weights.push_back(static_cast<double>(e - k));
    k = e;
  }
  const auto iso = isotonic_increasing(means, weights);
  starts.push_back(m);
  for (std::size_t b = 0; b + 1 < starts.size(); ++b)
    for (std::size_t k = starts[b]; k < starts[b + 1]; ++k)
      fitted[order[k]] = iso[b] + offset[starts[b]];
  return fitted;
}

namespace {

std::vector<double> rank_images(std::span<const double> distances,
                                const SimilarityMatrix& sim, TieApproach ties) {
  const auto sims = pair_similarities(sim);
  const std::size_t m = sims.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sims[a] != sims[b]) return sims[a] > sims[b];
    if (distances[a] != distances[b]) return distances[a] < distances[b];
    return a < b;
  });
  std::vector<double> sorted(distances.begin(), distances.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> images(m);
  for (std::size_t k = 0; k < m;) {
    std::size_t e = k;
    double sum = 0.0;
    while (e < m && sims[order[e]] == sims[order[k]]) sum += sorted[e++];
    for (std::size_t q = k; q < e; ++q)
      images[order[q]] = ties == TieApproach::Secondary
                             ? sum / static_cast<double>(e - k)
                             : sorted[q];
    k = e;
  }
  return images;
}

}  // namespace

double alienation(std::span<const Point2> points, const SimilarityMatrix& sim,
                  TieApproach ties) {
  require_match(points.size(), sim);
  const auto d = pair_distances(points);
  return std::sqrt(normalized_loss(d, disparities(d, sim, ties)));
}

double alienation(const SsaConfiguration& config, const SimilarityMatrix& sim) {
  return alienation(config.points, sim, TieApproach::Primary);
}

std::size_t monotone_violations(std::span<const Point2> points,
                                const SimilarityMatrix& sim) {
  require_match(points.size(), sim);
  const auto d = pair_distances(points);
  const auto s = pair_similarities(sim);
  std::size_t count = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (s[a] > s[b] && d[a] > d[b]) ++count;
  return count;
}

std::vector<Point2> random_start(std::size_t n, std::uint64_t seed,
                                 int restart) {
  SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(restart)));
  std::vector<Point2> pts(n);
  for (auto& p : pts) {
    p.x = rng.uniform(-1.0, 1.0);
    p.y = rng.uniform(-1.0, 1.0);
  }
  return pts;
}

namespace {

double sweep(std::vector<Point2>& points, const SimilarityMatrix& sim,
             TieApproach ties, Target mode, double gap) {
  require_match(points.size(), sim);
  const std::size_t n = points.size();
  const auto d = pair_distances(points);
  double rms = 0.0;
  for (double v : d) rms += v * v;
  rms = std::sqrt(rms / static_cast<double>(std::max<std::size_t>(d.size(), 1)));
  auto target = mode == Target::RankImage
                    ? rank_images(d, sim, ties)
                    : disparities(d, sim, ties, gap * rms);

  // Targets live on a sphere of fixed norm so the configuration cannot
  // collapse toward the trivial zero-loss solution.
  double norm2 = 0.0;
  for (double t : target) norm2 += t * t;
  if (norm2 > 0.0) {
    const double scale = std::sqrt(static_cast<double>(d.size()) / norm2);
    for (double& t : target) t *= scale;
  }

  // Guttman transform: X <- B(X) X / n.
  std::vector<Point2> next(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (d[k] <= 0.0) continue;
      const double ratio = target[k] / d[k];
      const double dx = ratio * (points[i].x - points[j].x);
      const double dy = ratio * (points[i].y - points[j].y);
      next[i].x += dx;
      next[i].y += dy;
      next[j].x -= dx;
      next[j].y -= dy;
    }
  }
  for (auto& p : next) {
    p.x /= static_cast<double>(n);
    p.y /= static_cast<double>(n);
  }
  points = std::move(next);

  const auto d1 = pair_distances(points);
  return normalized_loss(d1, mode == Target::RankImage
                                 ? rank_images(d1, sim, ties)
                                 : disparities(d1, sim, ties));
}

}  // namespace

double nonmetric_sweep(std::vector<Point2>& points, const SimilarityMatrix& sim,
                       TieApproach ties) {
  return sweep(points, sim, ties, Target::Isotonic, 0.0);
}

void normalize_configuration(std::vector<Point2>& points) {
  if (points.empty()) return;
  const auto n = static_cast<double>(points.size());
  double cx = 0.0, cy = 0.0;
  for (const auto& p : points) {
    cx += p.x;
    cy += p.y;
  }
  cx /= n;
  cy /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (auto& p : points) {
    p.x -= cx;
    p.y -= cy;
    sxx += p.x * p.x;
    syy += p.y * p.y;
    sxy += p.x * p.y;
  }
  const double phi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const double c = std::cos(phi), s = std::sin(phi);
  for (auto& p : points) {
    const double x = c * p.x + s * p.y;
    const double y = -s * p.x + c * p.y;
    p = {x, y};
  }
  const double rms = std::sqrt((sxx + syy) / n);
  if (rms > 0.0)
    for (auto& p : points) {
      p.x /= rms;
      p.y /= rms;
    }
  auto fix_sign = [&](double Point2::*axis) {
    double extreme = 0.0;
    for (const auto& p : points)
      if (std::abs(p.*axis) > std::abs(extreme)) extreme = p.*axis;
    if (extreme < 0.0)
      for (auto& p : points) p.*axis = -(p.*axis);
  };
  fix_sign(&Point2::x);
  fix_sign(&Point2::y);
}

SsaConfiguration embed(const SimilarityMatrix& sim, const SsaOptions& opt) {
  if (opt.dims != 2)
    throw Error(ErrorKind::InvalidArgument,
                "only two-dimensional SSA is supported");
  if (opt.restarts < 1)
    throw Error(ErrorKind::InvalidArgument, "SSA needs at least one restart");
  if (sim.size() < 3)
    throw Error(ErrorKind::TooFewVariables,
                "SSA needs at least three variables");

  std::vector<RestartResult> runs(static_cast<std::size_t>(opt.restarts));
  parallel_for(runs.size(), opt.threads, [&](std::size_t r) {
    runs[r] = run_restart(sim, opt, static_cast<int>(r));
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].loss < runs[best].loss) best = r;

  SsaConfiguration out;
  out.ids = sim.ids;
  out.points = std::move(runs[best].points);
  normalize_configuration(out.points);
  out.dims = opt.dims;
  out.seed = opt.seed;
  out.restarts_used = opt.restarts;
  out.best_restart = static_cast<int>(best);
  out.sweeps = runs[best].sweeps;
  out.max_sweeps = opt.max_sweeps;
  out.tolerance = opt.tolerance;

  const auto d = pair_distances(out.points);
  const auto fit = disparities(d, sim, TieApproach::Primary);
  out.alienation = std::sqrt(normalized_loss(d, fit));
  const double mean =
      d.empty() ? 0.0
                : std::accumulate(d.begin(), d.end(), 0.0) /
                      static_cast<double>(d.size());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    num += (d[k] - fit[k]) * (d[k] - fit[k]);
    den += (d[k] - mean) * (d[k] - mean);
  }
  out.stress = den > 0.0 ? std::min(1.0, std::sqrt(num / den)) : 0.0;
  return out;
}

SsaConfiguration embed(const SimilarityMatrix& sim, int dims,
                       std::uint64_t seed, int restarts) {
  SsaOptions opt;
  opt.dims = dims;
  opt.seed = seed;
  opt.restarts = restarts;
  return embed(sim, opt);
}

}  // namespace boldscale
