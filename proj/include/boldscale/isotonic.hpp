#pragma once

#include <span>
#include <vector>

namespace boldscale {

/// Weighted least-squares non-decreasing fit (pool adjacent violators).
/// `weights` may be empty for unit weights.
std::vector<double> isotonic_increasing(std::span<const double> values,
                                        std::span<const double> weights = {});

}  // namespace boldscale
