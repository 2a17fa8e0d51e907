#pragma once

#include "boldscale/composites.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace boldscale {

/// A distinct score vector and how many respondents share it.
struct Profile {
  std::vector<int> scores;
  std::size_t frequency = 1;
  std::size_t id = 0;

  int total() const;
};

/// Distinct rows with frequencies, lexicographically descending; ids are
/// dense in that order.
std::vector<Profile> build_profiles(const CompositeMatrix& composites);

enum class Relation { Equal, Greater, Less, Incomparable };

const char* to_string(Relation relation) noexcept;

/// Componentwise order of score vectors.
Relation compare(std::span<const int> p, std::span<const int> q);
Relation compare(const Profile& p, const Profile& q);

/// Rank coordinates; within a solution x and y are each a permutation of
/// 1..n.
struct RankPoint {
  int x = 0;
  int y = 0;

  friend bool operator==(const RankPoint&, const RankPoint&) = default;
};

/// Share of profile pairs (weighted by frequency products) whose relation the
/// coordinates reproduce: comparable pairs must be ordered the same way on
/// both axes, incomparable pairs strictly oppositely.
double correp(std::span<const Profile> profiles, std::span<const RankPoint> coords);
double correp(std::span<const Profile> profiles, std::span<const double> x,
              std::span<const double> y);

struct PosacOptions {
  std::uint64_t seed = 1;
  int restarts = 32;
  int max_passes = 1000;
  unsigned threads = 1;
};

struct PosacSolution {
  std::vector<Profile> profiles;
  std::vector<RankPoint> coords;
  double correp = 0.0;
  double initial_correp = 0.0;
  std::uint64_t seed = 0;
  int restarts = 0;
  int best_restart = 0;
  /// Accepted moves in the winning restart.
  int iterations = 0;
  /// Pairs whose total-score order is reversed by x + y.
  std::size_t joint_order_violations = 0;
};

/// Starting coordinates of restart `restart`. Restart 0 places profiles by
/// total score (x + y) and a fixed linear contrast of the items (x - y);
/// odd restarts draw the contrast weights at random, even ones a random
/// permutation pair.
std::vector<RankPoint> initial_coordinates(std::span<const Profile> profiles,
                                           std::uint64_t seed, int restart);

/// Two-dimensional partial-order scaling. Equal profiles are merged first.
/// Each restart hill-climbs over swaps of two profiles' x ranks or y ranks,
/// accepting a swap when correp rises, or stays equal while fewer pairs have
/// x + y ordered against their total scores; the best restart (highest
/// correp, then fewest such pairs, then lowest index) is returned.
PosacSolution solve(std::span<const Profile> profiles, const PosacOptions& options);
PosacSolution solve(std::span<const Profile> profiles, std::uint64_t seed,
                    int restarts);

}  // namespace boldscale
