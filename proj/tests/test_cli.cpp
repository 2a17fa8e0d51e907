#include "doctest.h"

#include "boldscale/delimited.hpp"
#include "boldscale/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "boldscale_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + BOLDSCALE_CLI + "\" " + args + " > \"" +
                          (scratch() / "last.log").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("generate, run and render") {
  const auto gen = scratch() / "gen";
  REQUIRE(cli("generate --respondents 50 --out-dir " + q(gen)) == 0);
  CHECK(fs::exists(gen / "problems.csv"));
  CHECK(fs::exists(gen / "responses.csv"));
  CHECK(fs::exists(gen / "config.json"));

  const auto out = scratch() / "run";
  REQUIRE(cli("run --problems " + q(gen / "problems.csv") + " --responses " +
              q(gen / "responses.csv") + " --restarts 4 --out-dir " + q(out)) == 0);
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "similarity.csv"));
  CHECK(fs::exists(out / "figures" / "ssa_map.svg"));
  CHECK(fs::exists(out / "figures" / "item_4_bends_3.svg"));
  const auto report = boldscale::load_report(boldscale::read_file(out / "report.json"));
  CHECK(report["config"]["seed"] == 1);

  const auto figs = scratch() / "figs";
  CHECK(cli("render --report " + q(out / "report.json") + " --which posac_map --which item:1:0 --out-dir " +
            q(figs)) == 0);
  CHECK(fs::exists(figs / "posac_map.svg"));
  CHECK(fs::exists(figs / "item_1_bends_0.svg"));

  CHECK(cli("posac --composites " + q(out / "composites.csv") + " --restarts 4 --out-dir " +
            q(scratch() / "posac")) == 0);
  CHECK(fs::exists(scratch() / "posac" / "posac.json"));
  CHECK(cli("ssa --problems " + q(gen / "problems.csv") + " --responses " +
            q(gen / "responses.csv") + " --restarts 2 --out-dir " + q(scratch() / "ssa")) == 0);
}

TEST_CASE("input errors exit with 2") {
  const auto bad = scratch() / "bad.csv";
  boldscale::write_file(bad, "id,x0,p0,x1,p1\nG1,10,1.5,100,0.2\n");
  CHECK(cli("run --problems " + q(bad) + " --responses " + q(bad)) == 2);
  CHECK(cli("run --problems " + q(scratch() / "missing.csv") + " --responses " + q(bad)) == 2);
  CHECK(cli("run") == 2);
  CHECK(cli("frobnicate") == 2);
  const auto report = scratch() / "old.json";
  boldscale::write_file(report, "{\"schema_version\": \"9.0\"}\n");
  CHECK(cli("render --report " + q(report) + " --out-dir " + q(scratch() / "r")) == 2);
}

TEST_CASE("analysis failures exit with 3") {
  const auto flat = scratch() / "flat.csv";
  boldscale::write_file(flat, "respondent,a,b\nr1,1,1\nr2,1,1\n");
  CHECK(cli("posac --composites " + q(flat) + " --out-dir " + q(scratch() / "p")) == 3);
}
