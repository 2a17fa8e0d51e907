#pragma once

#include "boldscale/report.hpp"

#include <string>
#include <vector>

namespace boldscale {

struct Figure {
  enum class Kind { SsaMap, PartitionedSsa, PosacMap, ItemDiagram };
  Kind kind = Kind::SsaMap;
  /// "type" or "ci" for PartitionedSsa.
  std::string facet = "type";
  /// 0-based item for ItemDiagram.
  std::size_t item = 0;
  int bends = 0;

  /// File stem such as "ssa_map" or "item_2_bends_1".
  std::string name() const;
};

/// Parses "ssa_map", "partitioned_ssa:type", "posac_map" or "item:<i>:<b>"
/// (item counted from 1).
Figure parse_figure(const std::string& spec);

/// Every figure a complete report supports.
std::vector<Figure> all_figures(const Json& report);

/// Throws MissingStage when the report lacks the data the figure needs.
std::string render_svg(const Json& report, const Figure& figure);

}  // namespace boldscale
