#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cracktip/cli_runner.hpp"

namespace {

using json = nlohmann::ordered_json;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw cracktip::ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw cracktip::ConfigError(std::string("config parse error: ") + e.what());
  }
}

void set_if(json& cfg, const std::string& key, const json& v) { cfg[key] = v; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crack-tip linearization toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = 0;
  std::string output_dir;
  app.add_option("--config", config_path, "configuration file (JSON)")->expected(1);
  app.add_option("--seed", seed, "seed for randomized inputs");
  app.add_option("--output-dir", output_dir, "directory for reports and CSV output");

  auto* sp = app.add_subcommand("spectrum", "boundary eigenvalues, decay rates, normalizations");
  int k_max = -1;
  sp->add_option("--k-max", k_max, "number of modes");

  auto* ex = app.add_subcommand("expand", "project a profile onto the mode basis");
  std::string ex_input, ex_preset;
  int ex_K = -1;
  ex->add_option("--input", ex_input, "CSV of phi,value samples on [0, 2pi]");
  ex->add_option("--preset", ex_preset, "built-in profile (zeta0, zeta1, modeK, random_span)");
  ex->add_option("--k-max", ex_K, "truncation order");

  auto* ev = app.add_subcommand("evolve", "synthesize a mode trajectory and check its equations");

  auto* id = app.add_subcommand("identities", "inner-variation boundary identities on the disk");
  std::string id_field, id_eta;
  double id_radius = -1.0;
  id->add_option("--field", id_field, "rad or isq");
  id->add_option("--eta", id_eta, "test field (identity, rotation, constant, z2, axis, polynomial)");
  id->add_option("--radius", id_radius, "disk radius");
  bool id_flip = false;
  id->add_flag("--flip-endpoint", id_flip, "reverse the endpoint orientation (control)");

  auto* de = app.add_subcommand("decay", "annulus energies and the three-annuli comparison");
  std::string de_which;
  int de_random = -1;
  de->add_option("--which", de_which, "energy form, E or G");
  de->add_option("--random-solutions", de_random, "also run a seeded random suite of this size");

  auto* lc = app.add_subcommand("linearize-check",
                                "residual order of the full system around the straight crack");
  bool lc_flip = false;
  lc->add_flag("--flip-sign", lc_flip, "negative control: flip the crack opening sign");

  CLI11_PARSE(app, argc, argv);

  json cfg;
  try {
    cfg = load_config(config_path);
    if (!cfg.is_object()) throw cracktip::ConfigError("config root must be an object");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(cracktip::ExitCode::config_error);
  }

  std::string command;
  if (sp->parsed()) {
    command = "spectrum";
    if (k_max >= 0) set_if(cfg, "k_max", k_max);
  } else if (ex->parsed()) {
    command = "expand";
    if (!ex_input.empty()) set_if(cfg, "input", ex_input);
    if (!ex_preset.empty()) set_if(cfg, "preset", ex_preset);
    if (ex_K >= 0) set_if(cfg, "K", ex_K);
  } else if (ev->parsed()) {
    command = "evolve";
  } else if (id->parsed()) {
    command = "identities";
    if (!id_field.empty()) set_if(cfg, "field", id_field);
    if (!id_eta.empty()) set_if(cfg, "eta", id_eta);
    if (id_radius > 0.0) set_if(cfg, "radius", id_radius);
    if (id_flip) set_if(cfg, "flip_endpoint", true);
  } else if (de->parsed()) {
    command = "decay";
    if (!de_which.empty()) set_if(cfg, "which", de_which);
    if (de_random >= 0) set_if(cfg, "random_solutions", de_random);
  } else if (lc->parsed()) {
    command = "linearize-check";
    if (lc_flip) set_if(cfg, "flip_sign", true);
  }

  const cracktip::RunReport rep = cracktip::run(command, cfg, seed, output_dir);

  if (rep.report.contains("error")) {
    std::cerr << "error: " << rep.report["error"].get<std::string>() << '\n';
  } else {
    for (const auto& a : rep.report["assertions"]) {
      std::cout << (a["pass"].get<bool>() ? "pass" : "FAIL") << "  "
                << a["name"].get<std::string>() << "  value=" << a["value"].dump() << '\n';
    }
  }
  if (!rep.artifacts.empty()) {
    for (const auto& a : rep.artifacts) std::cout << "wrote " << a << '\n';
  }
  return rep.exit_code;
}
