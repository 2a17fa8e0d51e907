#include "boldscale/isotonic.hpp"

#include "boldscale/error.hpp"

namespace boldscale {

std::vector<double> isotonic_increasing(std::span<const double> values,
                                        std::span<const double> weights) {
  if (!weights.empty() && weights.size() != values.size())
    throw Error(ErrorKind::LengthMismatch, "isotonic weights length mismatch");

  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    blocks.push_back({values[i], w, 1});
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].mean > blocks.back().mean) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double total = prev.weight + top.weight;
      prev.mean = total > 0.0
                      ? (prev.mean * prev.weight + top.mean * top.weight) / total
                      : 0.5 * (prev.mean + top.mean);
      prev.weight = total;
      prev.count += top.count;
    }
  }

  std::vector<double> fitted;
  fitted.reserve(values.size());
  for (const auto& b : blocks) fitted.insert(fitted.end(), b.count, b.mean);
  return fitted;
}

}  // namespace boldscale
