#pragma once

#include "boldscale/geometry.hpp"
#include "boldscale/random.hpp"
#include "boldscale/similarity.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace support {

inline std::vector<std::string> ids(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

/// Similarity exp(-d) of the points' distances.
inline boldscale::SimilarityMatrix similarity_of(const std::vector<boldscale::Point2>& pts) {
  boldscale::SimilarityMatrix s;
  s.ids = ids(pts.size());
  const std::size_t n = pts.size();
  s.values.assign(n * n, 1.0);
  s.support.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s.values[i * n + j] = std::exp(-boldscale::distance(pts[i], pts[j]));
  return s;
}

inline std::vector<boldscale::Point2> random_points(boldscale::SplitMix64& rng, std::size_t n) {
  std::vector<boldscale::Point2> pts(n);
  for (auto& p : pts) p = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return pts;
}

inline std::vector<boldscale::Point2> rotated(const std::vector<boldscale::Point2>& pts,
                                              double degrees, double scale = 1.0) {
  const double a = degrees * 3.14159265358979323846 / 180.0;
  std::vector<boldscale::Point2> out;
  for (const auto& p : pts)
    out.push_back({scale * (std::cos(a) * p.x - std::sin(a) * p.y),
                   scale * (std::sin(a) * p.x + std::cos(a) * p.y)});
  return out;
}

}  // namespace support
