#pragma once

// Weak monotonicity straight from its definition: every unordered pair of
// observations, both orientations.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

inline double mu2(const std::vector<double>& x, const std::vector<double>& y) {
  long double num = 0.0L, den = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j) continue;
      const long double dx = static_cast<long double>(x[i]) - x[j];
      const long double dy = static_cast<long double>(y[i]) - y[j];
      num += dx * dy;
      den += std::fabs(dx) * std::fabs(dy);
    }
  return static_cast<double>(num / den);
}

}  // namespace oracle
