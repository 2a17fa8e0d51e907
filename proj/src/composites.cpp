#include "boldscale/composites.hpp"

#include "boldscale/ct_core.hpp"
#include "boldscale/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace boldscale {

const char* to_string(MissingPolicy policy) noexcept {
  return policy == MissingPolicy::Exclude ? "exclude" : "mean_scale";
}

std::vector<std::string> select_representatives(const SsaConfiguration& config,
                                                const AxialPartition& partition,
                                                std::string_view element,
                                                std::size_t k) {
  const auto el = std::find(partition.elements.begin(), partition.elements.end(),
                            element);
  if (el == partition.elements.end())
    throw Error(ErrorKind::InvalidArgument,
                "partition '" + partition.facet + "' has no element '" +
                    std::string(element) + "'");
  const auto e = static_cast<std::size_t>(el - partition.elements.begin());
  if (partition.ids != config.ids)
    throw Error(ErrorKind::DimensionMismatch,
                "partition and configuration cover different variables");

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < config.ids.size(); ++i)
    if (partition.actual[i] == e && partition.predicted[i] == e)
      candidates.push_back(i);
  if (candidates.empty())
    throw Error(ErrorKind::EmptyRegion,
                "region '" + std::string(element) + "' of facet '" +
                    partition.facet + "' has no non-deviant variables");
  std::sort(candidates.begin(), candidates.end(),
            [&](std::size_t a, std::size_t b) { return config.ids[a] < config.ids[b]; });

  std::vector<std::size_t> chosen;
  if (candidates.size() <= k) {
    chosen = candidates;
  } else if (k > 0) {
    Point2 centroid;
    for (std::size_t i : candidates) {
      centroid.x += config.points[i].x;
      centroid.y += config.points[i].y;
    }
    centroid.x /= static_cast<double>(candidates.size());
    centroid.y /= static_cast<double>(candidates.size());

    std::size_t first = candidates.front();
    for (std::size_t i : candidates)
      if (distance(config.points[i], centroid) <
          distance(config.points[first], centroid))
        first = i;
    chosen.push_back(first);

    std::vector<double> nearest(config.ids.size(),
                                std::numeric_limits<double>::infinity());
    while (chosen.size() < k) {
      const Point2 last = config.points[chosen.back()];
      std::size_t pick = config.ids.size();
      for (std::size_t i : candidates) {
        if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
        nearest[i] = std::min(nearest[i], distance(config.points[i], last));
        if (pick == config.ids.size() || nearest[i] > nearest[pick]) pick = i;
      }
      chosen.push_back(pick);
    }
  }

  std::vector<std::string> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(config.ids[i]);
  return out;
}

std::vector<int> dichotomize(std::span<const double> values,
                             DichotomizeRule rule, double* threshold_out) {
  double threshold = rule.threshold;
  if (rule.kind == DichotomizeRule::Kind::MedianSplit)
    threshold = resolve_split(values, CiSplit::median());
  if (threshold_out) *threshold_out = threshold;
  std::vector<int> codes;
  codes.reserve(values.size());
  for (double v : values) codes.push_back(v >= threshold ? 2 : 1);
  return codes;
}

CompositeColumn make_composite(const ResponseMatrix& responses,
                               std::span<const std::string> members,
                               DichotomizeRule rule, MissingPolicy missing,
                               std::string construct) {
  if (members.empty())
    throw Error(ErrorKind::EmptyInput, "composite '" + construct +
                                           "' has no member variables");
  std::vector<std::size_t> cols;
  for (const auto& id : members) {
    const auto c = responses.column_of(id);
    if (!c)
      throw Error(ErrorKind::IdMismatch,
                  "composite member '" + id + "' is not a response column");
    cols.push_back(*c);
  }

  CompositeColumn out;
  out.spec.construct = std::move(construct);
  out.spec.members.assign(members.begin(), members.end());
  out.spec.rule = rule.kind;
  out.spec.missing = missing;
  out.sums.resize(responses.rows());
  out.codes.resize(responses.rows());

  std::vector<std::string> all_missing;
  std::vector<double> present_sums;
  std::vector<std::size_t> present_rows;
  for (std::size_t r = 0; r < responses.rows(); ++r) {
    double sum = 0.0;
    std::size_t answered = 0;
    for (std::size_t c : cols)
      if (const auto v = responses.at(r, c)) {
        sum += *v;
        ++answered;
      }
    if (answered == 0) {
      all_missing.push_back(responses.respondent_ids()[r]);
      continue;
    }
    if (answered < cols.size() && missing == MissingPolicy::Exclude) continue;
    const double scaled =
        sum / static_cast<double>(answered) * static_cast<double>(cols.size());
    out.sums[r] = scaled;
    present_sums.push_back(scaled);
    present_rows.push_back(r);
  }
  if (!all_missing.empty()) {
    std::string list;
    for (const auto& id : all_missing) list += (list.empty() ? "" : ", ") + id;
    throw Error(ErrorKind::MissingResponses,
                "composite '" + out.spec.construct +
                    "': no member answered by respondent(s) " + list);
  }
  if (present_sums.empty())
    throw Error(ErrorKind::EmptyInput, "composite '" + out.spec.construct +
                                           "': every respondent was excluded");

  const auto codes = dichotomize(present_sums, rule, &out.spec.threshold);
  for (std::size_t q = 0; q < present_rows.size(); ++q)
    out.codes[present_rows[q]] = codes[q];
  return out;
}

CompositeMatrix assemble_composites(std::span<const std::string> respondent_ids,
                                    std::span<const CompositeColumn> columns) {
  CompositeMatrix out;
  for (const auto& col : columns) {
    if (col.codes.size() != respondent_ids.size())
      throw Error(ErrorKind::DimensionMismatch,
                  "composite column length differs from respondent count");
    out.constructs.push_back(col.spec.construct);
  }
  for (std::size_t r = 0; r < respondent_ids.size(); ++r) {
    const bool complete = std::all_of(columns.begin(), columns.end(),
                                      [&](const auto& c) { return c.codes[r].has_value(); });
    if (!complete) continue;
    out.respondent_ids.push_back(respondent_ids[r]);
    for (const auto& col : columns) out.values.push_back(*col.codes[r]);
  }
  return out;
}

}  // namespace boldscale
