#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cracktip/cli_runner.hpp"

using namespace cracktip;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("cracktip_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ordered_json without_walltime(ordered_json j) {
  j.erase("wall_time_ms");
  return j;
}

void check_values_have_errors(const ordered_json& node, int& count) {
  if (node.is_object()) {
    if (node.contains("value")) {
      ++count;
      CHECK(node.contains("error"));
    }
    for (const auto& [k, v] : node.items()) check_values_have_errors(v, count);
  } else if (node.is_array()) {
    for (const auto& v : node) check_values_have_errors(v, count);
  }
}

}  // namespace

TEST_CASE("command registry") {
  const auto& cmds = known_commands();
  REQUIRE(cmds.size() == 6);
  for (const char* name :
       {"spectrum", "expand", "evolve", "identities", "decay", "linearize-check"}) {
    bool found = false;
    for (const auto& c : cmds) found = found || c == name;
    CHECK(found);
  }
}

TEST_CASE("identical config and seed produce identical reports") {
  const fs::path dir = fresh_dir("determinism");
  ordered_json cfg = {{"k_max", 10}, {"output_dir", dir.string()}};
  const RunReport a = run("spectrum", cfg, 7);
  const RunReport b = run("spectrum", cfg, 7);
  CHECK(a.exit_code == 0);
  CHECK(without_walltime(a.report).dump() == without_walltime(b.report).dump());
  CHECK(a.report["schema_version"] == kSchemaVersion);
  CHECK(a.report["command"] == "spectrum");
  CHECK(a.report["seed"] == 7);
  CHECK(a.report["all_assertions_pass"] == true);
  REQUIRE_FALSE(a.artifacts.empty());
  CHECK(fs::exists(a.artifacts.back()));
  fs::remove_all(dir);
}

#ifdef _OPENMP
TEST_CASE("reports do not depend on the thread count") {
  const fs::path dir = fresh_dir("threads");
  ordered_json cfg = {{"modes", ordered_json::array({{{"k", 2}, {"C", 1.0}}})},
                      {"output_dir", dir.string()}};
  const int old = omp_get_max_threads();
  omp_set_num_threads(2);
  const RunReport two = run("evolve", cfg, 1);
  omp_set_num_threads(old);
  const RunReport full = run("evolve", cfg, 1);
  CHECK(two.exit_code == 0);
  CHECK(without_walltime(two.report).dump() == without_walltime(full.report).dump());
  fs::remove_all(dir);
}
#endif

TEST_CASE("spectrum report pins the first eigenvalue and carries error bars") {
  const fs::path dir = fresh_dir("spectrum");
  ordered_json cfg = {{"k_max", 6}, {"csv", "modes.csv"}, {"output_dir", dir.string()}};
  const RunReport rep = run("spectrum", cfg, 0);
  REQUIRE(rep.exit_code == 0);
  const auto& rows = rep.report["results"]["modes"];
  REQUIRE(rows.size() == 6);
  CHECK(rows[0]["nu"]["value"].get<double>() == 0.5);
  CHECK(rows[1]["nu"]["value"].get<double>() > 1.5);
  CHECK(rows[1]["nu"]["value"].get<double>() < 2.0);

  int counted = 0;
  check_values_have_errors(rep.report["results"], counted);
  CHECK(counted > 10);

  bool has_csv = false;
  for (const auto& a : rep.artifacts) {
    if (a.size() > 4 && a.substr(a.size() - 4) == ".csv") {
      has_csv = true;
      std::ifstream in(a);
      std::string header;
      std::getline(in, header);
      CHECK(header.substr(0, 2) == "k,");
    }
  }
  CHECK(has_csv);
  fs::remove_all(dir);
}

TEST_CASE("expand presets recover unit coefficients") {
  const fs::path dir = fresh_dir("expand");
  ordered_json cfg = {{"preset", "zeta0"}, {"K", 12}, {"output_dir", dir.string()}};
  const RunReport rep = run("expand", cfg, 0);
  REQUIRE(rep.exit_code == 0);
  CHECK(rep.report["results"]["a0"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  for (const auto& entry : rep.report["results"]["a"])
    CHECK(std::abs(entry["value"].get<double>()) <= 1e-7);
  fs::remove_all(dir);
}

TEST_CASE("evolve certifies the decay rate of a pure mode") {
  const fs::path dir = fresh_dir("evolve");
  ordered_json cfg = {{"modes", ordered_json::array({{{"k", 2}, {"C", 1.0}}})},
                      {"output_dir", dir.string()}};
  const RunReport rep = run("evolve", cfg, 0);
  REQUIRE(rep.exit_code == 0);
  CHECK(rep.report["all_assertions_pass"] == true);
  const double rate = rep.report["results"]["decay_rate"]["value"].get<double>();
  CHECK(rate == doctest::Approx(-1.389350969).epsilon(0.01));
  fs::remove_all(dir);
}

TEST_CASE("decay dichotomy on an explicit decaying trajectory") {
  const fs::path dir = fresh_dir("decay");
  ordered_json cfg = {{"modes", ordered_json::array({{{"k", 2}, {"C", 1.0}}})},
                      {"which", "E"},
                      {"t0", 0.0},
                      {"t1", 3.0},
                      {"nphi", 65},
                      {"nt", 49},
                      {"output_dir", dir.string()}};
  const RunReport rep = run("decay", cfg, 0);
  REQUIRE(rep.exit_code == 0);
  CHECK(rep.report["results"]["check"]["verdict"] == "hypothesis_false");
  fs::remove_all(dir);
}

TEST_CASE("exit codes for broken input") {
  CHECK(run("no-such-command", ordered_json::object(), 0).exit_code == 2);
  CHECK(run("spectrum", {{"k_mx", 5}}, 0).exit_code == 2);
  CHECK(run("spectrum", {{"k_max", "many"}}, 0).exit_code == 2);

  const fs::path dir = fresh_dir("codes");
  ordered_json empty_modes = {{"modes", ordered_json::array()},
                              {"output_dir", dir.string()}};
  CHECK(run("evolve", empty_modes, 0).exit_code == 3);

  ordered_json flipped = {{"field", "rad"},
                          {"eta", "constant"},
                          {"constant", ordered_json::array({1.0, 0.0})},
                          {"flip_endpoint", true},
                          {"assert", true},
                          {"output_dir", dir.string()}};
  const RunReport rep = run("identities", flipped, 0);
  CHECK(rep.exit_code == 1);
  CHECK(rep.report["all_assertions_pass"] == false);
  fs::remove_all(dir);
}

TEST_CASE("environment variable overrides the configured output directory") {
  const fs::path cfg_dir = fresh_dir("env_cfg");
  const fs::path env_dir = fresh_dir("env_dir");
  setenv("CRACKTIP_OUTPUT_DIR", env_dir.string().c_str(), 1);
  ordered_json cfg = {{"k_max", 4}, {"output_dir", cfg_dir.string()}};
  const RunReport rep = run("spectrum", cfg, 0);
  unsetenv("CRACKTIP_OUTPUT_DIR");
  REQUIRE(rep.exit_code == 0);
  REQUIRE_FALSE(rep.artifacts.empty());
  CHECK(rep.artifacts.back().find(env_dir.string()) == 0);
  CHECK(fs::exists(rep.artifacts.back()));
  fs::remove_all(cfg_dir);
  fs::remove_all(env_dir);
}
