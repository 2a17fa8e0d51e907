#include "boldscale/posac.hpp"

#include "boldscale/error.hpp"
#include "boldscale/parallel.hpp"
#include "boldscale/random.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace boldscale {

int Profile::total() const { return std::accumulate(scores.begin(), scores.end(), 0); }

const char* to_string(Relation relation) noexcept {
  switch (relation) {
    case Relation::Equal: return "equal";
    case Relation::Greater: return "greater";
    case Relation::Less: return "less";
    case Relation::Incomparable: return "incomparable";
  }
  return "?";
}

std::vector<Profile> build_profiles(const CompositeMatrix& composites) {
  if (composites.rows() == 0 || composites.cols() == 0)
    throw Error(ErrorKind::EmptyInput, "no composite scores to profile");
  std::map<std::vector<int>, std::size_t, std::greater<>> counts;
  for (std::size_t r = 0; r < composites.rows(); ++r) {
    std::vector<int> row(composites.cols());
    for (std::size_t c = 0; c < composites.cols(); ++c) row[c] = composites.at(r, c);
    ++counts[row];
  }
  std::vector<Profile> out;
  for (const auto& [scores, freq] : counts)
    out.push_back({scores, freq, out.size()});
  return out;
}

Relation compare(std::span<const int> p, std::span<const int> q) {
  if (p.size() != q.size())
    throw Error(ErrorKind::LengthMismatch, "profiles differ in length");
  bool greater = false, less = false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    greater |= p[k] > q[k];
    less |= p[k] < q[k];
  }
  if (greater && less) return Relation::Incomparable;
  if (greater) return Relation::Greater;
  if (less) return Relation::Less;
  return Relation::Equal;
}

Relation compare(const Profile& p, const Profile& q) {
  return compare(p.scores, q.scores);
}

namespace {

bool represented(Relation rel, double dx, double dy) {
  switch (rel) {
    case Relation::Equal: return dx == 0.0 && dy == 0.0;
    case Relation::Greater: return dx >= 0.0 && dy >= 0.0 && (dx > 0.0 || dy > 0.0);
    case Relation::Less: return dx <= 0.0 && dy <= 0.0 && (dx < 0.0 || dy < 0.0);
    case Relation::Incomparable: return (dx > 0.0 && dy < 0.0) || (dx < 0.0 && dy > 0.0);
  }
  return false;
}

std::vector<Profile> merge_equal(std::span<const Profile> profiles) {
  std::map<std::vector<int>, std::size_t, std::greater<>> counts;
  std::size_t length = profiles.empty() ? 0 : profiles.front().scores.size();
  for (const auto& p : profiles) {
    if (p.scores.size() != length)
      throw Error(ErrorKind::LengthMismatch, "profiles differ in length");
    if (p.frequency == 0)
      throw Error(ErrorKind::InvalidArgument, "profile frequency must be >= 1");
    counts[p.scores] += p.frequency;
  }
  std::vector<Profile> out;
  for (const auto& [scores, freq] : counts) out.push_back({scores, freq, out.size()});
  return out;
}

std::vector<int> ranks_of(const std::vector<double>& score,
                          const std::vector<double>& tiebreak) {
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] < score[b];
    if (tiebreak[a] != tiebreak[b]) return tiebreak[a] < tiebreak[b];
    return a < b;
  });
  std::vector<int> rank(score.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k) + 1;
  return rank;
}

// Hill climbing state for one restart.
class Climber {
public:
  explicit Climber(std::span<const Profile> profiles) : n_(profiles.size()) {
    rel_.resize(n_ * n_);
    weight_.resize(n_ * n_);
    total_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      total_[i] = profiles[i].total();
      for (std::size_t j = 0; j < n_; ++j) {
        rel_[i * n_ + j] = compare(profiles[i], profiles[j]);
        weight_[i * n_ + j] =
            static_cast<std::uint64_t>(profiles[i].frequency) * profiles[j].frequency;
      }
    }
  }

  struct Score {
    std::uint64_t correct = 0;
    std::int64_t violations = 0;

    bool operator>(const Score& o) const {
      return correct != o.correct ? correct > o.correct : violations < o.violations;
    }
  };

  Score score(const std::vector<int>& x, const std::vector<int>& y) const {
    Score s;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) add_pair(s, i, j, x, y);
    return s;
  }

  int climb(std::vector<int>& x, std::vector<int>& y, int max_passes) const {
    Score current = score(x, y);
    int accepted = 0;
    for (int pass = 0; pass < max_passes; ++pass) {
      bool moved = false;
      for (int axis = 0; axis < 2; ++axis) {
        auto& coord = axis == 0 ? x : y;
        for (std::size_t a = 0; a < n_; ++a) {
          for (std::size_t b = a + 1; b < n_; ++b) {
            Score before = local(a, b, x, y);
            std::swap(coord[a], coord[b]);
            Score after = local(a, b, x, y);
            Score next{current.correct - before.correct + after.correct,
                       current.violations - before.violations + after.violations};
            if (next > current) {
              current = next;
              moved = true;
              ++accepted;
            } else {
              std::swap(coord[a], coord[b]);
            }
          }
        }
      }
      if (!moved) break;
    }
    return accepted;
  }

  std::size_t violations(const std::vector<int>& x, const std::vector<int>& y) const {
    return static_cast<std::size_t>(score(x, y).violations);
  }

private:
  void add_pair(Score& s, std::size_t i, std::size_t j, const std::vector<int>& x,
                const std::vector<int>& y) const {
    const double dx = x[i] - x[j];
    const double dy = y[i] - y[j];
    if (represented(rel_[i * n_ + j], dx, dy)) s.correct += weight_[i * n_ + j];
    const int joint = (x[i] + y[i]) - (x[j] + y[j]);
    if ((total_[i] > total_[j] && joint < 0) || (total_[i] < total_[j] && joint > 0))
      ++s.violations;
  }

  // Contribution of every pair touching a or b.
  Score local(std::size_t a, std::size_t b, const std::vector<int>& x,
              const std::vector<int>& y) const {
    Score s;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j != a) add_pair(s, a, j, x, y);
      if (j != b && j != a) add_pair(s, b, j, x, y);
    }
    return s;
  }

  std::size_t n_;
  std::vector<Relation> rel_;
  std::vector<std::uint64_t> weight_;
  std::vector<int> total_;
};

std::uint64_t total_weight(std::span<const Profile> profiles) {
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j)
      w += static_cast<std::uint64_t>(profiles[i].frequency) * profiles[j].frequency;
  return w;
}

}  // namespace

double correp(std::span<const Profile> profiles, std::span<const double> x,
              std::span<const double> y) {
  if (x.size() != profiles.size() || y.size() != profiles.size())
    throw Error(ErrorKind::DimensionMismatch,
                "coordinates must cover every profile");
  double good = 0.0, all = 0.0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      const double w = static_cast<double>(profiles[i].frequency) *
                       static_cast<double>(profiles[j].frequency);
      all += w;
      if (represented(compare(profiles[i], profiles[j]), x[i] - x[j], y[i] - y[j]))
        good += w;
    }
  }
  return all > 0.0 ? good / all : 1.0;
}

double correp(std::span<const Profile> profiles, std::span<const RankPoint> coords) {
  std::vector<double> x, y;
  for (const auto& c : coords) {
    x.push_back(c.x);
    y.push_back(c.y);
  }
  return correp(profiles, x, y);
}

std::vector<RankPoint> initial_coordinates(std::span<const Profile> profiles,
                                           std::uint64_t seed, int restart) {
  const std::size_t n = profiles.size();
  const std::size_t m = n ? profiles.front().scores.size() : 0;
  SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(restart)));
  std::vector<RankPoint> out(n);

  if (restart > 0 && restart % 2 == 0) {
    std::vector<double> u(n), v(n), zero(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = rng.uniform();
      v[i] = rng.uniform();
    }
    const auto rx = ranks_of(u, zero), ry = ranks_of(v, zero);
    for (std::size_t i = 0; i < n; ++i) out[i] = {rx[i], ry[i]};
    return out;
  }

  std::vector<double> weights(m);
  for (std::size_t k = 0; k < m; ++k)
    weights[k] = restart == 0
                     ? (m > 1 ? 1.0 - 2.0 * static_cast<double>(k) / (m - 1) : 0.0)
                     : rng.uniform(-1.0, 1.0);

  std::vector<double> joint(n), lateral(n);
  for (std::size_t i = 0; i < n; ++i) {
    joint[i] = profiles[i].total();
    for (std::size_t k = 0; k < m; ++k) lateral[i] += weights[k] * profiles[i].scores[k];
  }
  auto rescale = [](std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double low = *lo, range = *hi - *lo;
    for (double& e : v) e = range > 0.0 ? (e - low) / range : 0.0;
  };
  rescale(joint);
  rescale(lateral);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = joint[i] + lateral[i] - 0.5;
    ys[i] = joint[i] - lateral[i] + 0.5;
  }
  const auto rx = ranks_of(xs, joint), ry = ranks_of(ys, joint);
  for (std::size_t i = 0; i < n; ++i) out[i] = {rx[i], ry[i]};
  return out;
}

PosacSolution solve(std::span<const Profile> input, const PosacOptions& opt) {
  if (opt.restarts < 1)
    throw Error(ErrorKind::InvalidArgument, "POSAC needs at least one restart");
  auto profiles = merge_equal(input);
  if (profiles.size() < 2)
    throw Error(ErrorKind::DegenerateSolution,
                "POSAC needs at least two distinct profiles");

  const Climber climber(profiles);
  struct Run {
    std::vector<int> x, y;
    Climber::Score score;
    Climber::Score initial;
    int accepted = 0;
  };
  std::vector<Run> runs(static_cast<std::size_t>(opt.restarts));
  parallel_for(runs.size(), opt.threads, [&](std::size_t r) {
    const auto start = initial_coordinates(profiles, opt.seed, static_cast<int>(r));
    Run run;
    for (const auto& p : start) {
      run.x.push_back(p.x);
      run.y.push_back(p.y);
    }
    run.initial = climber.score(run.x, run.y);
    run.accepted = climber.climb(run.x, run.y, opt.max_passes);
    run.score = climber.score(run.x, run.y);
    runs[r] = std::move(run);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].score > runs[best].score) best = r;

  const double all = static_cast<double>(total_weight(profiles));
  PosacSolution out;
  out.coords.resize(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i)
    out.coords[i] = {runs[best].x[i], runs[best].y[i]};
  out.correp = static_cast<double>(runs[best].score.correct) / all;
  out.initial_correp = static_cast<double>(runs[best].initial.correct) / all;
  out.seed = opt.seed;
  out.restarts = opt.restarts;
  out.best_restart = static_cast<int>(best);
  out.iterations = runs[best].accepted;
  out.joint_order_violations = static_cast<std::size_t>(runs[best].score.violations);
  out.profiles = std::move(profiles);
  return out;
}

PosacSolution solve(std::span<const Profile> profiles, std::uint64_t seed,
                    int restarts) {
  PosacOptions opt;
  opt.seed = seed;
  opt.restarts = restarts;
  return solve(profiles, opt);
}

}  // namespace boldscale
