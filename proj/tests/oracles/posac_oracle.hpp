#pragma once

// Best achievable correp over every pair of rank permutations. For each x
// permutation every pair asks for a particular y order; the best y
// permutation then follows from a dynamic program over the set of profiles
// already placed at the bottom of the y axis.

#include "boldscale/posac.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline double best_correp(const std::vector<boldscale::Profile>& profiles) {
  using boldscale::Relation;
  const std::size_t n = profiles.size();
  std::vector<std::uint64_t> w(n * n);
  std::vector<Relation> rel(n * n);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      w[i * n + j] = static_cast<std::uint64_t>(profiles[i].frequency) * profiles[j].frequency;
      rel[i * n + j] = boldscale::compare(profiles[i], profiles[j]);
      if (i < j) total += w[i * n + j];
    }

  std::vector<int> x(n);
  std::iota(x.begin(), x.end(), 0);
  std::uint64_t best = 0;
  const std::size_t full = std::size_t{1} << n;
  std::vector<std::int64_t> dp(full);
  // below[i*n+j]: pair counts as correct when i ends up below j on y.
  std::vector<std::uint64_t> below(n * n);
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const bool x_less = x[i] < x[j];
        const Relation r = rel[i * n + j];
        bool ok = false;
        if (r == Relation::Less) ok = x_less;
        else if (r == Relation::Greater) ok = false;
        else if (r == Relation::Incomparable) ok = !x_less;
        below[i * n + j] = ok ? w[i * n + j] : 0;
      }
    std::fill(dp.begin(), dp.end(), -1);
    dp[0] = 0;
    for (std::size_t set = 0; set < full; ++set) {
      if (dp[set] < 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (set & (std::size_t{1} << k)) continue;
        std::uint64_t gain = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (set & (std::size_t{1} << i)) gain += below[i * n + k];
        const std::size_t next = set | (std::size_t{1} << k);
        dp[next] = std::max(dp[next], dp[set] + static_cast<std::int64_t>(gain));
      }
    }
    best = std::max(best, static_cast<std::uint64_t>(dp[full - 1]));
  } while (std::next_permutation(x.begin(), x.end()));
  return total ? static_cast<double>(best) / static_cast<double>(total) : 1.0;
}

}  // namespace oracle
