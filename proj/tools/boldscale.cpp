#include "boldscale/delimited.hpp"
#include "boldscale/error.hpp"
#include "boldscale/pipeline.hpp"
#include "boldscale/report.hpp"
#include "boldscale/svg.hpp"
#include "boldscale/synthgen.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace boldscale;

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<std::string> ci_split;
  std::optional<std::size_t> k;
};

PipelineConfig load_config(const std::string& path, const Overrides& o) {
  PipelineConfig c;
  if (!path.empty()) {
    try {
      c = config_from_json(Json::parse(read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
  }
  if (o.seed) c.seed = *o.seed;
  if (o.restarts) c.ssa_restarts = c.posac_restarts = *o.restarts;
  if (o.k) c.k_representatives = *o.k;
  if (o.ci_split) {
    if (*o.ci_split == "median") {
      c.ci_split = CiSplit::median();
    } else {
      try {
        std::size_t used = 0;
        const double t = std::stod(*o.ci_split, &used);
        if (used != o.ci_split->size()) throw std::invalid_argument("trailing text");
        c.ci_split = CiSplit::at(t);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "--ci-split must be 'median' or a number");
      }
    }
  }
  return c;
}

std::vector<ChoiceProblem> load_problems(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_problems(in, path);
}

ResponseMatrix load_responses(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_responses(in, path);
}

template <class Writer, class Value>
void write_with(const fs::path& path, Writer writer, const Value& value) {
  std::ostringstream out;
  writer(out, value);
  write_file(path, out.str());
}

void write_figures(const Json& report, const fs::path& dir, const std::vector<Figure>& figures) {
  for (const auto& f : figures) write_file(dir / (f.name() + ".svg"), render_svg(report, f));
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--restarts", o.restarts, "Restarts for SSA and POSAC");
  cmd->add_option("--ci-split", o.ci_split, "CI split: 'median' or a threshold");
  cmd->add_option("--k-representatives", o.k, "Representatives per composite");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Facet-theoretic scaling of risky binary choice data"};
  app.require_subcommand(1);
  std::string out_dir = "out";
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  GeneratorConfig gen;
  auto* generate = app.add_subcommand("generate", "Write synthetic problems and responses");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--gain", gen.n_gain, "Gain problems");
  generate->add_option("--loss", gen.n_loss, "Loss problems");
  generate->add_option("--respondents", gen.n_respondents, "Respondents");
  generate->add_option("--beta", gen.beta, "CI sensitivity");
  generate->add_option("--alpha", gen.alpha, "Base rate");
  generate->add_option("--out-dir", out_dir, "Output directory");

  std::string problems_path, responses_path, config_path, composites_path, report_path;
  Overrides o;
  auto* run = app.add_subcommand("run", "Run every stage and write the report and figures");
  run->add_option("--problems", problems_path, "Problems CSV")->required();
  run->add_option("--responses", responses_path, "Responses CSV")->required();
  run->add_option("--config", config_path, "Config JSON");
  run->add_option("--out-dir", out_dir, "Output directory");
  add_overrides(run, o);

  std::vector<std::string> which;
  auto* render = app.add_subcommand("render", "Render figures from a report");
  render->add_option("--report", report_path, "Report JSON")->required();
  render->add_option("--which", which,
                     "ssa_map, partitioned_ssa:type, partitioned_ssa:ci, posac_map, item:<i>:<b> "
                     "(default: all)");
  render->add_option("--out-dir", out_dir, "Output directory");

  auto* ssa = app.add_subcommand("ssa", "Similarity, SSA and facet partitions only");
  ssa->add_option("--problems", problems_path, "Problems CSV")->required();
  ssa->add_option("--responses", responses_path, "Responses CSV")->required();
  ssa->add_option("--config", config_path, "Config JSON");
  ssa->add_option("--out-dir", out_dir, "Output directory");
  add_overrides(ssa, o);

  auto* posac = app.add_subcommand("posac", "POSAC and item roles on a composite score table");
  posac->add_option("--composites", composites_path, "Composites CSV")->required();
  posac->add_option("--config", config_path, "Config JSON");
  posac->add_option("--out-dir", out_dir, "Output directory");
  add_overrides(posac, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const fs::path dir(out_dir);
    if (*generate) {
      const auto problems = generate_problems(gen);
      const auto responses = generate_responses(problems, gen);
      write_with(dir / "problems.csv", [](std::ostream& s, const auto& v) { write_problems(s, v); }, problems);
      write_with(dir / "responses.csv", write_responses, responses);
      PipelineConfig config;
      config.seed = gen.seed;
      write_file(dir / "config.json", dump_report(config_to_json(config)));
      std::cout << "wrote " << problems.size() << " problems and " << responses.rows()
                << " respondents to " << dir.string() << "\n";
    } else if (*run) {
      const auto config = load_config(config_path, o);
      const auto result = run_pipeline(load_problems(problems_path), load_responses(responses_path),
                                       config, threads);
      const auto report = build_report(result);
      write_file(dir / "report.json", dump_report(report));
      write_with(dir / "similarity.csv", write_similarity, result.similarity);
      write_with(dir / "configuration.csv", write_configuration, result.ssa);
      write_with(dir / "composites.csv", write_composites, result.composite_matrix);
      write_figures(report, dir / "figures", all_figures(report));
      std::cout << "type SI " << result.type_partition.separation_index << ", CI SI "
                << result.ci_partition.separation_index << ", correp " << result.posac.correp
                << "\nreport: " << (dir / "report.json").string() << "\n";
    } else if (*render) {
      const auto report = load_report(read_file(report_path));
      std::vector<Figure> figures;
      if (which.empty()) figures = all_figures(report);
      for (const auto& w : which) figures.push_back(parse_figure(w));
      write_figures(report, dir, figures);
      std::cout << "wrote " << figures.size() << " figures to " << dir.string() << "\n";
    } else if (*ssa) {
      const auto config = load_config(config_path, o);
      const auto problems = load_problems(problems_path);
      const auto responses = align_responses(problems, load_responses(responses_path));
      const auto labeling = label_ci_facet(problems, config.functions(), config.ci_split);
      const auto sim = similarity_matrix(responses, config.similarity, threads);
      SsaOptions opt;
      opt.seed = config.seed;
      opt.restarts = config.ssa_restarts;
      opt.threads = threads;
      const auto conf = embed(sim, opt);
      FacetAssignment type{"type", {"Gain", "Loss"}, {}}, ci{"ci", {"Low", "High"}, {}};
      for (std::size_t j = 0; j < problems.size(); ++j) {
        type.labels[problems[j].id] = labeling.labels[j].type_facet == ProblemKind::Gain ? 0 : 1;
        ci.labels[problems[j].id] = labeling.labels[j].ci_facet == CiLevel::Low ? 0 : 1;
      }
      const auto tp = fit_axial_partition(conf, type), cp = fit_axial_partition(conf, ci);
      write_with(dir / "similarity.csv", write_similarity, sim);
      write_with(dir / "configuration.csv", write_configuration, conf);
      std::cout << "alienation " << conf.alienation << ", type SI " << tp.separation_index
                << ", CI SI " << cp.separation_index << "\n";
    } else if (*posac) {
      const auto config = load_config(config_path, o);
      std::istringstream in(read_file(composites_path));
      const auto composites = read_composites(in, composites_path);
      PosacOptions opt;
      opt.seed = config.seed;
      opt.restarts = config.posac_restarts;
      opt.threads = threads;
      const auto solution = solve(build_profiles(composites), opt);
      const auto table = deviations_table(solution, composites.constructs, threads);
      const auto roles = assign_roles(table);
      Json profiles = Json::array();
      for (std::size_t i = 0; i < solution.profiles.size(); ++i)
        profiles.push_back({{"scores", solution.profiles[i].scores},
                            {"frequency", solution.profiles[i].frequency},
                            {"x", solution.coords[i].x},
                            {"y", solution.coords[i].y}});
      Json role_list = Json::array();
      for (std::size_t i = 0; i < roles.size(); ++i)
        role_list.push_back({{"item", composites.constructs[i]}, {"role", to_string(roles[i])}});
      const Json out{{"schema_version", kSchemaVersion},
                     {"correp", solution.correp},
                     {"profiles", profiles},
                     {"roles", role_list}};
      write_file(dir / "posac.json", dump_report(out));
      std::cout << "correp " << solution.correp << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return is_input_error(e.kind()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
