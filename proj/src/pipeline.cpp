#include "boldscale/pipeline.hpp"

#include "boldscale/delimited.hpp"
#include "boldscale/error.hpp"

#include <optional>

namespace boldscale {

namespace {

template <class F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

}  // namespace

CiFunctions PipelineConfig::functions() const {
  if (ci_functions == "identity") return CiFunctions::identity();
  if (ci_functions == "power") return CiFunctions::power(amount_exponent, probability_exponent);
  throw Error(ErrorKind::InvalidArgument, "unknown CI functions '" + ci_functions + "'");
}

const std::vector<ConstructSource>& default_constructs() {
  static const std::vector<ConstructSource> constructs{
      {"Gain", "type", "Gain"},
      {"Loss", "type", "Loss"},
      {"LoCI", "ci", "Low"},
      {"HiCI", "ci", "High"},
  };
  return constructs;
}

ResponseMatrix align_responses(const std::vector<ChoiceProblem>& problems,
                               const ResponseMatrix& responses) {
  check_alignment(problems, responses);
  std::vector<std::string> ids;
  std::vector<std::size_t> source;
  for (const auto& p : problems) {
    ids.push_back(p.id);
    source.push_back(*responses.column_of(p.id));
  }
  ResponseMatrix out(responses.respondent_ids(), ids);
  for (std::size_t r = 0; r < responses.rows(); ++r)
    for (std::size_t c = 0; c < ids.size(); ++c) out.set(r, c, responses.at(r, source[c]));
  return out;
}

PipelineResult run_pipeline(const std::vector<ChoiceProblem>& problems,
                            const ResponseMatrix& responses, const PipelineConfig& config,
                            unsigned threads) {
  PipelineResult out;
  out.config = config;
  out.problems = problems;
  out.responses = align_responses(problems, responses);

  stage("ct_core", [&] {
    const auto fns = config.functions();
    out.labeling = label_ci_facet(problems, fns, config.ci_split);
    for (const auto& l : out.labeling.labels) out.ci.push_back(l.ci_value);
  });

  out.similarity = stage("similarity", [&] {
    return similarity_matrix(out.responses, config.similarity, threads);
  });

  out.ssa = stage("ssa", [&] {
    SsaOptions opt;
    opt.seed = config.seed;
    opt.restarts = config.ssa_restarts;
    opt.threads = threads;
    return embed(out.similarity, opt);
  });

  stage("facet_partition", [&] {
    FacetAssignment type{"type", {"Gain", "Loss"}, {}};
    FacetAssignment ci{"ci", {"Low", "High"}, {}};
    for (std::size_t j = 0; j < problems.size(); ++j) {
      const auto& l = out.labeling.labels[j];
      type.labels[problems[j].id] = l.type_facet == ProblemKind::Gain ? 0 : 1;
      ci.labels[problems[j].id] = l.ci_facet == CiLevel::Low ? 0 : 1;
    }
    out.type_partition = fit_axial_partition(out.ssa, type);
    out.ci_partition = fit_axial_partition(out.ssa, ci);
  });

  stage("composites", [&] {
    for (const auto& src : default_constructs()) {
      const auto& partition = src.facet == "type" ? out.type_partition : out.ci_partition;
      const auto members =
          select_representatives(out.ssa, partition, src.element, config.k_representatives);
      out.composites.push_back(make_composite(out.responses, members,
                                              DichotomizeRule::median_split(),
                                              config.missing, src.construct));
    }
    out.composite_matrix = assemble_composites(out.responses.respondent_ids(), out.composites);
  });

  out.posac = stage("posac", [&] {
    const auto profiles = build_profiles(out.composite_matrix);
    PosacOptions opt;
    opt.seed = config.seed;
    opt.restarts = config.posac_restarts;
    opt.threads = threads;
    return solve(profiles, opt);
  });

  stage("item_roles", [&] {
    out.deviations = deviations_table(out.posac, out.composite_matrix.constructs, threads);
    out.roles = assign_roles(out.deviations);
    std::optional<StepCurve> polar_x, polar_y, attenuating, accentuating;
    for (std::size_t i = 0; i < out.roles.size(); ++i) {
      const auto curve = role_curve(out.deviations.rows[i], out.roles[i]).curve;
      if (curve.thresholds.empty()) continue;
      switch (out.roles[i]) {
        case ItemRole::XPolar: polar_x = curve; break;
        case ItemRole::YPolar: polar_y = curve; break;
        case ItemRole::Attenuating:
          if (!attenuating) attenuating = curve;
          break;
        case ItemRole::Accentuating:
          if (!accentuating) accentuating = curve;
          break;
        default: break;
      }
    }
    out.intervals = derive_intervals(*polar_x, *polar_y, attenuating, accentuating);
  });
  return out;
}

}  // namespace boldscale
