#include "boldscale/report.hpp"

#include "boldscale/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace boldscale {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::Parse, "config: " + what);
}

template <class T>
T get(const Json& json, const char* key) {
  try {
    return json.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(std::string("key '") + key + "' has the wrong type");
  }
}

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json curve_json(const StepFit& fit) {
  if (fit.curve.thresholds.empty()) return nullptr;
  Json bends = Json::array();
  for (const auto& p : fit.curve.bend_points()) bends.push_back({p.x, p.y});
  return {{"shape", to_string(fit.curve.shape)},
          {"bends", fit.curve.bends},
          {"deviation", number(fit.deviation)},
          {"thresholds", fit.curve.thresholds},
          {"bend_points", bends}};
}

Json partition_json(const AxialPartition& p) {
  Json bands = Json::array();
  for (auto e : p.band_elements) bands.push_back(p.elements[e]);
  Json points = Json::array();
  for (std::size_t i = 0; i < p.ids.size(); ++i)
    points.push_back({{"id", p.ids[i]},
                      {"actual", p.elements[p.actual[i]]},
                      {"predicted", p.elements[p.predicted[i]]},
                      {"deviation", p.deviations[i]}});
  return {{"facet", p.facet},
          {"elements", p.elements},
          {"theta_deg", p.theta_deg},
          {"normal", {p.normal.x, p.normal.y}},
          {"offsets", p.offsets},
          {"band_elements", bands},
          {"separation_index", p.separation_index},
          {"total_deviation", p.total_deviation},
          {"spread", p.spread},
          {"margin", p.margin},
          {"deviants", p.deviants},
          {"points", points}};
}

Json axis_json(const AxisIntervals& axis) {
  Json cuts = Json::array();
  for (const auto& c : axis.cuts) cuts.push_back({{"position", c.position}, {"source", c.source}});
  Json intervals = Json::array();
  for (const auto& iv : axis.intervals)
    intervals.push_back({{"label", iv.label},
                         {"lo", iv.lo},
                         {"hi", iv.hi},
                         {"closed_hi", iv.closed_hi},
                         {"bounded_by", iv.bounded_by}});
  return {{"cuts", cuts}, {"intervals", intervals}, {"warnings", axis.warnings}};
}

const char* split_rule(const CiSplit& s) {
  return s.rule == CiSplit::Rule::Median ? "median" : "threshold";
}

}  // namespace

PipelineConfig config_from_json(const Json& json) {
  if (!json.is_object()) config_error("expected a JSON object");
  static const std::set<std::string> known{
      "seed", "ssa_restarts", "posac_restarts", "ci_split", "ci_functions",
      "amount_exponent", "probability_exponent", "k_representatives", "similarity",
      "missing"};
  for (const auto& [key, value] : json.items())
    if (!known.count(key)) config_error("unknown key '" + key + "'");

  PipelineConfig c;
  if (json.contains("seed")) c.seed = get<std::uint64_t>(json, "seed");
  if (json.contains("ssa_restarts")) c.ssa_restarts = get<int>(json, "ssa_restarts");
  if (json.contains("posac_restarts")) c.posac_restarts = get<int>(json, "posac_restarts");
  if (json.contains("ci_split")) {
    const auto& v = json["ci_split"];
    if (v.is_string() && v.get<std::string>() == "median") c.ci_split = CiSplit::median();
    else if (v.is_number()) c.ci_split = CiSplit::at(v.get<double>());
    else config_error("ci_split must be \"median\" or a number");
  }
  if (json.contains("ci_functions")) c.ci_functions = get<std::string>(json, "ci_functions");
  if (json.contains("amount_exponent")) c.amount_exponent = get<double>(json, "amount_exponent");
  if (json.contains("probability_exponent"))
    c.probability_exponent = get<double>(json, "probability_exponent");
  if (json.contains("k_representatives"))
    c.k_representatives = get<std::size_t>(json, "k_representatives");
  if (json.contains("similarity")) {
    const auto s = get<std::string>(json, "similarity");
    if (s == "mu2") c.similarity = SimilarityKind::WeakMonotonicity;
    else if (s == "pearson") c.similarity = SimilarityKind::Pearson;
    else config_error("similarity must be \"mu2\" or \"pearson\"");
  }
  if (json.contains("missing")) {
    const auto s = get<std::string>(json, "missing");
    if (s == "mean_scale") c.missing = MissingPolicy::MeanScale;
    else if (s == "exclude") c.missing = MissingPolicy::Exclude;
    else config_error("missing must be \"mean_scale\" or \"exclude\"");
  }
  if (c.ci_functions != "identity" && c.ci_functions != "power")
    config_error("ci_functions must be \"identity\" or \"power\"");
  if (c.ssa_restarts < 1 || c.posac_restarts < 1) config_error("restarts must be at least 1");
  if (c.k_representatives < 1) config_error("k_representatives must be at least 1");
  return c;
}

Json config_to_json(const PipelineConfig& c) {
  Json split = c.ci_split.rule == CiSplit::Rule::Median ? Json("median") : Json(c.ci_split.threshold);
  return {{"seed", c.seed},
          {"ssa_restarts", c.ssa_restarts},
          {"posac_restarts", c.posac_restarts},
          {"ci_split", split},
          {"ci_functions", c.ci_functions},
          {"amount_exponent", c.amount_exponent},
          {"probability_exponent", c.probability_exponent},
          {"k_representatives", c.k_representatives},
          {"similarity", c.similarity == SimilarityKind::WeakMonotonicity ? "mu2" : "pearson"},
          {"missing", c.missing == MissingPolicy::MeanScale ? "mean_scale" : "exclude"}};
}

Json build_report(const PipelineResult& r) {
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["tool"] = {{"name", "boldscale"}, {"version", kToolVersion}};
  report["config"] = config_to_json(r.config);
  report["inputs"] = {{"problems", r.problems.size()}, {"respondents", r.responses.rows()}};

  Json problems = Json::array();
  for (std::size_t j = 0; j < r.problems.size(); ++j) {
    const auto& p = r.problems[j];
    problems.push_back({{"id", p.id},
                        {"kind", to_string(p.kind)},
                        {"x0", p.x0},
                        {"p0", p.p0},
                        {"x1", p.x1},
                        {"p1", p.p1},
                        {"ci", r.ci[j]},
                        {"ci_level", to_string(r.labeling.labels[j].ci_facet)}});
  }
  report["challenge_index"] = {
      {"functions", r.config.ci_functions},
      {"split", {{"rule", split_rule(r.config.ci_split)}, {"threshold", r.labeling.threshold}}},
      {"problems", problems}};

  {
    const auto& s = r.similarity;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    std::size_t pairs = 0, support = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        lo = std::min(lo, s(i, j));
        hi = std::max(hi, s(i, j));
        sum += s(i, j);
        support = std::min(support, s.support_at(i, j));
        ++pairs;
      }
    report["similarity"] = {{"coefficient", r.config.similarity == SimilarityKind::WeakMonotonicity ? "mu2" : "pearson"},
                            {"variables", s.size()},
                            {"min", number(lo)},
                            {"max", number(hi)},
                            {"mean", pairs ? number(sum / static_cast<double>(pairs)) : Json(nullptr)},
                            {"min_support", pairs ? Json(support) : Json(nullptr)}};
  }

  {
    const auto& c = r.ssa;
    Json points = Json::array();
    for (std::size_t i = 0; i < c.ids.size(); ++i)
      points.push_back({{"id", c.ids[i]}, {"x", c.points[i].x}, {"y", c.points[i].y}});
    report["ssa"] = {{"dims", c.dims},
                     {"alienation", c.alienation},
                     {"stress", c.stress},
                     {"seed", c.seed},
                     {"restarts", c.restarts_used},
                     {"best_restart", c.best_restart},
                     {"sweeps", c.sweeps},
                     {"points", points}};
  }

  report["partitions"] = {{"si_definition", kSeparationIndexDefinition},
                          {"type", partition_json(r.type_partition)},
                          {"ci", partition_json(r.ci_partition)}};

  Json composites = Json::array();
  for (std::size_t k = 0; k < r.composites.size(); ++k) {
    const auto& col = r.composites[k];
    const auto& src = default_constructs()[k];
    std::size_t bold = 0, scored = 0;
    for (const auto& code : col.codes)
      if (code) {
        ++scored;
        bold += *code == 2;
      }
    composites.push_back({{"construct", col.spec.construct},
                          {"facet", src.facet},
                          {"element", src.element},
                          {"members", col.spec.members},
                          {"rule", col.spec.rule == DichotomizeRule::Kind::MedianSplit ? "median_split" : "threshold"},
                          {"threshold", col.spec.threshold},
                          {"missing", to_string(col.spec.missing)},
                          {"scored", scored},
                          {"bold", bold}});
  }
  report["composites"] = {{"respondents", r.composite_matrix.rows()}, {"constructs", composites}};

  {
    const auto& s = r.posac;
    Json profiles = Json::array();
    for (std::size_t i = 0; i < s.profiles.size(); ++i)
      profiles.push_back({{"id", s.profiles[i].id},
                          {"scores", s.profiles[i].scores},
                          {"frequency", s.profiles[i].frequency},
                          {"x", s.coords[i].x},
                          {"y", s.coords[i].y}});
    report["posac"] = {{"items", r.composite_matrix.constructs},
                       {"correp", s.correp},
                       {"correp_weighting", "frequency_product"},
                       {"initial_correp", s.initial_correp},
                       {"seed", s.seed},
                       {"restarts", s.restarts},
                       {"best_restart", s.best_restart},
                       {"iterations", s.iterations},
                       {"joint_order_violations", s.joint_order_violations},
                       {"profiles", profiles}};
  }

  {
    double max_cell = 0.0;
    for (const auto& row : r.deviations.rows)
      for (double v : {row.polar(), row.one_bend(), row.best[2].deviation, row.best[3].deviation})
        if (std::isfinite(v)) max_cell = std::max(max_cell, v);
    auto scaled = [&](double v) {
      return number(max_cell > 0.0 ? v * 100.0 / max_cell : (std::isfinite(v) ? 0.0 : v));
    };
    Json rows = Json::array();
    for (const auto& row : r.deviations.rows) {
      Json curves = Json::array();
      for (const auto& fit : row.best) curves.push_back(curve_json(fit));
      rows.push_back({{"item", row.item},
                      {"polar", number(row.polar())},
                      {"polar_axis", std::string(1, row.polar_axis())},
                      {"one_bend", number(row.one_bend())},
                      {"one_bend_shape", std::string(1, row.one_bend_tag())},
                      {"promo", number(row.best[2].deviation)},
                      {"modif", number(row.best[3].deviation)},
                      {"normalized",
                       {{"polar", scaled(row.polar())},
                        {"one_bend", scaled(row.one_bend())},
                        {"promo", scaled(row.best[2].deviation)},
                        {"modif", scaled(row.best[3].deviation)}}},
                      {"polar_x", curve_json(row.polar_x)},
                      {"polar_y", curve_json(row.polar_y)},
                      {"attenuating", curve_json(row.l)},
                      {"accentuating", curve_json(row.inverted_l)},
                      {"best_by_bends", curves}});
    }
    report["deviations"] = {
        {"metric", "frequency-weighted L1 rank distance of misplaced profiles to their region"},
        {"normalization", "normalized columns are x100 / largest finite cell"},
        {"rows", rows}};
  }

  Json roles = Json::array();
  for (std::size_t i = 0; i < r.roles.size(); ++i) {
    const auto fit = role_curve(r.deviations.rows[i], r.roles[i]);
    roles.push_back({{"item", r.deviations.rows[i].item},
                     {"role", to_string(r.roles[i])},
                     {"curve", curve_json(fit)}});
  }
  report["roles"] = roles;
  report["intervals"] = {{"x", axis_json(r.intervals.x)}, {"y", axis_json(r.intervals.y)}};
  return report;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

void check_schema_version(const std::string& version) {
  const std::string ours = kSchemaVersion;
  auto major = [](const std::string& v) { return v.substr(0, v.find('.')); };
  if (version.empty() || major(version) != major(ours))
    throw Error(ErrorKind::SchemaVersion,
                "report schema version '" + version + "' is incompatible with " + ours);
}

Json load_report(const std::string& text) {
  Json report;
  try {
    report = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("report: ") + e.what());
  }
  if (!report.is_object() || !report.contains("schema_version") ||
      !report["schema_version"].is_string())
    throw Error(ErrorKind::SchemaVersion, "report has no schema_version");
  check_schema_version(report["schema_version"].get<std::string>());
  return report;
}

}  // namespace boldscale
