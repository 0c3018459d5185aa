#include "cracktip/cli_runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "cracktip/annuli.hpp"
#include "cracktip/expansion.hpp"
#include "cracktip/fields.hpp"
#include "cracktip/identities.hpp"
#include "cracktip/linearized.hpp"
#include "cracktip/nonlinear.hpp"
#include "cracktip/quadrature.hpp"
#include "cracktip/ventsel.hpp"

namespace cracktip {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num(double value, double error) {
  json j;
  j["value"] = value;
  j["error"] = error;
  return j;
}

void check_keys(const json& obj, const std::string& ctx, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(ctx + ": expected an object");
  for (const auto& [k, v] : obj.items())
    if (allowed.find(k) == allowed.end()) throw ConfigError(ctx + ": unknown key '" + k + "'");
}

double get_num(const json& o, const std::string& key, double dflt) {
  if (!o.contains(key)) return dflt;
  if (!o[key].is_number()) throw ConfigError("key '" + key + "' must be a number");
  return o[key].get<double>();
}

std::int64_t get_int(const json& o, const std::string& key, std::int64_t dflt) {
  if (!o.contains(key)) return dflt;
  if (!o[key].is_number_integer()) throw ConfigError("key '" + key + "' must be an integer");
  return o[key].get<std::int64_t>();
}

bool get_bool(const json& o, const std::string& key, bool dflt) {
  if (!o.contains(key)) return dflt;
  if (!o[key].is_boolean()) throw ConfigError("key '" + key + "' must be a boolean");
  return o[key].get<bool>();
}

std::string get_str(const json& o, const std::string& key, const std::string& dflt) {
  if (!o.contains(key)) return dflt;
  if (!o[key].is_string()) throw ConfigError("key '" + key + "' must be a string");
  return o[key].get<std::string>();
}

std::size_t positive_size(std::int64_t v, const std::string& key, std::int64_t lo) {
  if (v < lo) throw ConfigError("key '" + key + "' must be at least " + std::to_string(lo));
  return static_cast<std::size_t>(v);
}

struct AssertionLog {
  json entries = json::array();
  bool all_pass = true;

  void record(const std::string& name, bool pass, double value, double tolerance) {
    json e;
    e["name"] = name;
    e["pass"] = pass;
    e["value"] = value;
    e["tolerance"] = tolerance;
    entries.push_back(std::move(e));
    all_pass = all_pass && pass;
  }
};

std::string artifact_path(const std::string& outdir, const std::string& name) {
  fs::create_directories(outdir);
  return (fs::path(outdir) / name).string();
}

std::vector<ModeAmplitude> parse_modes(const json& cfg) {
  std::vector<ModeAmplitude> modes;
  if (!cfg.contains("modes")) return modes;
  if (!cfg["modes"].is_array()) throw ConfigError("key 'modes' must be an array");
  for (const auto& m : cfg["modes"]) {
    check_keys(m, "modes entry", {"k", "C", "D"});
    const auto k = positive_size(get_int(m, "k", 0), "modes.k", 2);
    modes.push_back({k, get_num(m, "C", 0.0), get_num(m, "D", 0.0), 0.0});
  }
  return modes;
}

LinearizedTrajectory trajectory_from_config(const json& cfg, std::size_t nphi, std::size_t nt,
                                            double t0, double t1) {
  const CylinderGrid grid = CylinderGrid::standard(nphi, nt, t0, t1);
  const double lambda_inf = get_num(cfg, "lambda_inf", 0.0);
  LinearizedTrajectory traj =
      synthesize_modes(parse_modes(cfg), -lambda_inf / std::sqrt(2.0 * kPi), grid);
  if (cfg.contains("slow")) {
    check_keys(cfg["slow"], "slow", {"c1", "c2", "d"});
    const double c1 = get_num(cfg["slow"], "c1", 0.0);
    const double c2 = get_num(cfg["slow"], "c2", 0.0);
    const double d = get_num(cfg["slow"], "d", 0.0);
    if (c1 != 0.0 || c2 != 0.0 || d != 0.0) traj = combine(traj, slow_mode(c1, c2, d, grid));
  }
  return traj;
}

// ---- spectrum ----

void run_spectrum(const json& cfg, std::uint64_t, const std::string& outdir, AssertionLog& log,
                  json& results, std::vector<std::string>& artifacts) {
  check_keys(cfg, "spectrum config", {"k_max", "grid_n", "csv", "output_dir"});
  const auto k_max = positive_size(get_int(cfg, "k_max", 16), "k_max", 2);
  const auto grid_n = positive_size(get_int(cfg, "grid_n", 2049), "grid_n", 65);
  if (grid_n % 2 == 0) throw ConfigError("key 'grid_n' must be odd");

  const Grid1D grid = Grid1D::uniform(0.0, 2.0 * kPi, grid_n);
  const auto modes = spectrum(k_max, grid);

  const std::string csv = artifact_path(outdir, get_str(cfg, "csv", "spectrum.csv"));
  {
    std::ofstream out(csv);
    out << "k,nu_k,mu_k,c_k,bracket_lo,bracket_hi,psi_residual\n";
    for (const auto& m : modes)
      out << m.k << ',' << fmt(m.nu) << ',' << fmt(m.mu) << ',' << fmt(m.c) << ','
          << fmt(m.bracket_lo) << ',' << fmt(m.bracket_hi) << ',' << fmt(m.psi_residual) << '\n';
  }
  artifacts.push_back(csv);

  json rows = json::array();
  for (const auto& m : modes) {
    json r;
    r["k"] = m.k;
    r["nu"] = num(m.nu, m.k == 1 ? 0.0 : 1e-13 / kPi);
    r["mu"] = num(m.mu, m.k == 1 ? 0.0 : 1e-13 / kPi);
    const double c_ref = m.k >= 2 ? normalization_closed_form(m.nu) : 1.0;
    r["c"] = num(m.c, std::abs(m.c - c_ref));
    rows.push_back(std::move(r));
  }
  results["modes"] = std::move(rows);

  log.record("nu1_exact_half", modes[0].nu == 0.5, modes[0].nu, 0.0);
  if (k_max >= 2) {
    log.record("nu2_bracket", modes[1].nu > 1.5 && modes[1].nu < 2.0, modes[1].nu, 0.0);
    log.record("mu2_above_one", modes[1].mu > 1.0, modes[1].mu, 0.0);
  }
  bool brackets_ok = true;
  for (std::size_t k = 3; k <= k_max; ++k) {
    const double nu = modes[k - 1].nu;
    brackets_ok = brackets_ok && nu > static_cast<double>(k - 1) && nu < static_cast<double>(k);
  }
  log.record("bracket_per_index", brackets_ok, brackets_ok ? 1.0 : 0.0, 0.0);
}

// ---- expand ----

SampledFunction1D load_function_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("expand: cannot open input '" + path + "'");
  std::vector<double> phis, values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b)) continue;
    try {
      const double p = std::stod(a);
      const double v = std::stod(b);
      phis.push_back(p);
      values.push_back(v);
    } catch (const std::exception&) {
      continue;  // header or comment line
    }
  }
  if (phis.size() < 8) throw ConfigError("expand: input has too few samples");
  if (std::abs(phis.front()) > 1e-9 || std::abs(phis.back() - 2.0 * kPi) > 1e-9)
    throw ConfigError("expand: input must span [0, 2pi]");
  SampledFunction1D f;
  f.grid = Grid1D::uniform(phis.front(), phis.back(), phis.size());
  for (std::size_t i = 0; i < phis.size(); ++i)
    if (std::abs(phis[i] - f.grid.nodes[i]) > 1e-9)
      throw ConfigError("expand: input grid is not uniform");
  f.values = std::move(values);
  f.parity = Parity::odd;
  return f;
}

void run_expand(const json& cfg, std::uint64_t seed, const std::string& outdir, AssertionLog& log,
                json& results, std::vector<std::string>& artifacts) {
  check_keys(cfg, "expand config", {"input", "preset", "K", "grid_n", "csv", "output_dir"});
  const auto K = positive_size(get_int(cfg, "K", 16), "K", 2);
  const auto grid_n = positive_size(get_int(cfg, "grid_n", 2049), "grid_n", 65);
  const bool has_input = cfg.contains("input");
  const bool has_preset = cfg.contains("preset");
  if (has_input == has_preset)
    throw ConfigError("expand: provide exactly one of 'input' or 'preset'");

  SampledFunction1D f;
  if (has_input) {
    f = load_function_csv(get_str(cfg, "input", ""));
  } else {
    const std::string preset = get_str(cfg, "preset", "");
    const Grid1D grid = Grid1D::uniform(0.0, 2.0 * kPi, grid_n);
    if (preset == "zeta0" || preset == "zeta1") {
      f = basis_function(preset == "zeta0" ? 0 : 1, grid);
    } else if (preset.rfind("mode", 0) == 0) {
      const auto k = positive_size(std::strtol(preset.c_str() + 4, nullptr, 10), "preset mode", 2);
      f = basis_function(k, grid);
    } else if (preset == "random_span") {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> amp(-1.0, 1.0);
      const SpectralBasis basis = SpectralBasis::build(K, grid);
      ModeCoefficients c;
      c.a0 = amp(rng);
      c.a1 = amp(rng);
      c.a.resize(K - 1);
      for (auto& a : c.a) a = amp(rng);
      f = reconstruct(c, basis);
    } else {
      throw ConfigError("expand: unknown preset '" + preset + "'");
    }
  }

  const ModeCoefficients c = expand(f, K);
  const std::string csv = artifact_path(outdir, get_str(cfg, "csv", "coefficients.csv"));
  {
    std::ofstream out(csv);
    out << "k,a_k\n0," << fmt(c.a0) << "\n1," << fmt(c.a1) << '\n';
    for (std::size_t k = 2; k <= c.K(); ++k) out << k << ',' << fmt(c.a[k - 2]) << '\n';
  }
  artifacts.push_back(csv);

  results["a0"] = num(c.a0, c.truncation_error);
  results["a1"] = num(c.a1, c.truncation_error);
  json arr = json::array();
  for (double a : c.a) arr.push_back(num(a, c.truncation_error));
  results["a"] = std::move(arr);
  results["truncation_error"] = c.truncation_error;
  log.record("coefficients_finite", std::isfinite(c.a0) && std::isfinite(c.a1), c.a0, 0.0);
}

// ---- evolve ----

void run_evolve(const json& cfg, std::uint64_t, const std::string& outdir, AssertionLog& log,
                json& results, std::vector<std::string>& artifacts) {
  check_keys(cfg, "evolve config",
             {"modes", "lambda_inf", "slow", "t0", "t1", "nphi", "nt", "fit_window", "csv",
              "phi_stride", "t_stride", "assert", "output_dir"});
  const double t0 = get_num(cfg, "t0", 0.0);
  const double t1 = get_num(cfg, "t1", 4.0);
  const auto nphi = positive_size(get_int(cfg, "nphi", 513), "nphi", 65);
  const auto nt = positive_size(get_int(cfg, "nt", 401), "nt", 33);
  if (!(t0 < t1)) throw ConfigError("evolve: need t0 < t1");

  const LinearizedTrajectory traj = trajectory_from_config(cfg, nphi, nt, t0, t1);

  double w0 = t0 + 0.25 * (t1 - t0), w1 = t1 - 0.125 * (t1 - t0);
  if (cfg.contains("fit_window")) {
    const auto& w = cfg["fit_window"];
    if (!w.is_array() || w.size() != 2) throw ConfigError("evolve: fit_window must be [w0, w1]");
    w0 = w[0].get<double>();
    w1 = w[1].get<double>();
  }

  const PairResidual res = lineare_residual(traj);
  const double rate = decay_rate(traj, w0, w1);
  const double rate_late = decay_rate(traj, 0.5 * (w0 + w1), w1);

  const std::string csv = artifact_path(outdir, get_str(cfg, "csv", "trajectory.csv"));
  const auto pstride = positive_size(get_int(cfg, "phi_stride", 16), "phi_stride", 1);
  const auto tstride = positive_size(get_int(cfg, "t_stride", 8), "t_stride", 1);
  {
    std::ofstream out(csv);
    out << "phi,r_or_t,value\n";
    const auto& g = traj.v.grid();
    for (std::size_t it = 0; it < g.t.n; it += tstride)
      for (std::size_t ip = 0; ip < g.phi.n; ip += pstride)
        out << fmt(g.phi.nodes[ip]) << ',' << fmt(g.t.nodes[it]) << ','
            << fmt(traj.v.at(ip, it)) << '\n';
  }
  artifacts.push_back(csv);

  results["pde_residual_max"] = num(res.pde_max, 1e-6);
  results["bc_residual_max"] = num(res.bc_max, 1e-12);
  results["ode_residual_max"] = num(res.ode_max, 1e-6);
  results["decay_rate"] = num(rate, std::abs(rate - rate_late));
  json mus = json::array();
  for (const auto& m : traj.analytic.modes) {
    json e;
    e["k"] = m.k;
    e["nu"] = num(m.nu, 1e-13 / kPi);
    e["mu"] = num(m.nu - 0.5, 1e-13 / kPi);
    e["C"] = num(m.C, 0.0);
    e["D"] = num(m.D, 0.0);
    mus.push_back(std::move(e));
  }
  results["modes"] = std::move(mus);

  if (get_bool(cfg, "assert", true)) {
    log.record("pde_residual_budget", res.pde_max <= 1e-5, res.pde_max, 1e-5);
    log.record("ode_residual_budget", res.ode_max <= 1e-5, res.ode_max, 1e-5);
    std::size_t live = 0;
    bool growing = false;
    double mu = 0.0;
    for (const auto& m : traj.analytic.modes) {
      if (m.C != 0.0) {
        ++live;
        mu = m.nu - 0.5;
      }
      growing = growing || m.D != 0.0;
    }
    const bool slow_present = traj.analytic.slow_c1 != 0.0 || traj.analytic.slow_c2 != 0.0 ||
                              traj.analytic.slow_d != 0.0;
    if (live == 1 && !growing && !slow_present)
      log.record("single_mode_decay_rate", std::abs(rate + mu) <= 0.01 * mu, rate, 0.01 * mu);
  }
}

// ---- identities ----

json terms_to_json(const IdentityTerms& t) {
  json j;
  j["bulk"] = t.bulk;
  j["crack"] = t.crack;
  j["boundary"] = t.boundary;
  j["endpoint"] = t.endpoint;
  return j;
}

json report_to_json(const IdentityReport& r) {
  json j;
  j["identity"] = r.identity;
  j["field"] = r.field_name;
  j["eta"] = r.eta_name;
  j["radius"] = r.radius;
  j["lhs"] = num(r.lhs, r.richardson_estimate);
  j["rhs"] = num(r.rhs, r.richardson_estimate);
  j["residual"] = num(r.residual, r.richardson_estimate);
  j["terms"] = terms_to_json(r.terms);
  j["term_estimates"] = terms_to_json(r.term_estimates);
  j["crack_length"] = num(r.crack_length, kQuadratureTol);
  j["conformal_defect_max"] = r.conformal_defect_max;
  j["endpoint_flipped"] = r.endpoint_flipped;
  j["grid"] = {{"ns", r.ns}, {"nphi", r.nphi}, {"nboundary", r.nboundary}};
  if (!r.extra.empty()) {
    json e;
    for (const auto& [k, v] : r.extra) e[k] = num(v, kQuadratureTol);
    j["extra"] = std::move(e);
  }
  return j;
}

VectorField2D eta_from_config(const json& cfg) {
  const std::string name = get_str(cfg, "eta", "identity");
  if (name == "identity") return identity_field();
  if (name == "rotation") return rotation_field();
  if (name == "z2") return z_squared_field();
  if (name == "axis") return axis_field();
  if (name == "constant") {
    double vx = 1.0, vy = 0.0;
    if (cfg.contains("constant")) {
      const auto& v = cfg["constant"];
      if (!v.is_array() || v.size() != 2) throw ConfigError("identities: constant must be [vx, vy]");
      vx = v[0].get<double>();
      vy = v[1].get<double>();
    }
    return constant_field(vx, vy);
  }
  if (name == "polynomial") {
    if (!cfg.contains("polynomial"))
      throw ConfigError("identities: eta=polynomial needs a 'polynomial' table");
    const auto& p = cfg["polynomial"];
    check_keys(p, "polynomial", {"component1", "component2"});
    auto comp = [](const json& arr) {
      std::vector<std::vector<double>> rows;
      for (const auto& r : arr) rows.push_back(r.get<std::vector<double>>());
      return rows;
    };
    return polynomial_field({comp(p["component1"]), comp(p["component2"])});
  }
  throw ConfigError("identities: unknown eta '" + name + "'");
}

void run_identities(const json& cfg, std::uint64_t, const std::string& outdir, AssertionLog& log,
                    json& results, std::vector<std::string>& artifacts) {
  check_keys(cfg, "identities config",
             {"field", "eta", "radius", "constant", "polynomial", "flip_endpoint", "ns", "nphi",
              "nboundary", "assert", "output_dir"});
  const std::string field = get_str(cfg, "field", "rad");
  if (field != "rad" && field != "isq")
    throw ConfigError("identities: field must be 'rad' or 'isq'");
  const double radius = get_num(cfg, "radius", 0.5);
  if (!(radius > 0.0)) throw ConfigError("identities: radius must be positive");

  IdentityOptions opt;
  opt.ns = positive_size(get_int(cfg, "ns", 513), "ns", 65);
  opt.nphi = positive_size(get_int(cfg, "nphi", 513), "nphi", 65);
  opt.nboundary = positive_size(get_int(cfg, "nboundary", 2049), "nboundary", 65);
  opt.flip_endpoint_orientation = get_bool(cfg, "flip_endpoint", false);

  const PolarField u = field == "rad" ? rad_field() : isq_field();
  const CrackParametrization crack = CrackParametrization::zero();
  const VectorField2D eta = eta_from_config(cfg);

  IdentityReport general = boundary_variation_report(u, crack, radius, eta, opt);
  general.field_name = field;
  results["general"] = report_to_json(general);
  const bool checks = get_bool(cfg, "assert", !opt.flip_endpoint_orientation);
  if (eta.name == "identity") {
    IdentityReport d = dlms(u, crack, radius, opt);
    d.field_name = field;
    results["dlms"] = report_to_json(d);
    if (field == "rad" && checks) {
      log.record("dlms_lhs_unit", std::abs(d.lhs - 1.0) <= 1e-7, d.lhs, 1e-7);
      log.record("dlms_rhs_unit", std::abs(d.rhs - 1.0) <= 1e-7, d.rhs, 1e-7);
    }
  }
  IdentityReport am = am_identity(u, crack, radius, opt);
  am.field_name = field;
  results["am_singleton"] = report_to_json(am);

  if (checks) {
    const double budget = std::max(1e-7, 10.0 * general.richardson_estimate);
    log.record("general_identity_residual", std::abs(general.residual) <= budget,
               general.residual, budget);
    log.record("am_residual", std::abs(am.residual) <= 1e-7, am.residual, 1e-7);
  }
  artifacts.clear();  // identities emits only the JSON report
  (void)outdir;
}

// ---- decay ----

json energies_to_json(const AnnulusEnergies& e) {
  json j;
  j["interval"] = {e.sigma, e.s};
  j["E"] = num(e.E, e.error_estimate);
  j["F"] = num(e.F, e.error_estimate);
  j["G"] = num(e.G, e.error_estimate);
  j["analytic_path"] = e.analytic_path;
  return j;
}

json annuli_to_json(const ThreeAnnuliReport& rep) {
  json j;
  j["verdict"] = to_string(rep.verdict);
  j["which"] = rep.which == EnergyKind::E ? "E" : "G";
  j["eta"] = rep.eta;
  j["c0"] = rep.c0;
  j["first"] = energies_to_json(rep.first);
  j["middle"] = energies_to_json(rep.middle);
  j["last"] = energies_to_json(rep.last);
  if (rep.which == EnergyKind::G) {
    j["extra_condition_max"] = num(rep.extra_condition_max, kQuadratureTol);
    j["extra_condition_ok"] = rep.extra_condition_ok;
  }
  return j;
}

void run_decay(const json& cfg, std::uint64_t seed, const std::string& outdir, AssertionLog& log,
               json& results, std::vector<std::string>& artifacts) {
  check_keys(cfg, "decay config",
             {"modes", "lambda_inf", "slow", "base", "eta", "c0", "which", "t0", "t1", "nphi",
              "nt", "K", "random_solutions", "k_range", "amplitude", "assert", "output_dir"});
  const double base = get_num(cfg, "base", 0.0);
  const double eta = get_num(cfg, "eta", kDefaultEta);
  const double c0 = get_num(cfg, "c0", kDefaultC0);
  if (!(eta > 0.0) || !(c0 > 0.0)) throw ConfigError("decay: eta and c0 must be positive");
  const std::string which_s = get_str(cfg, "which", "E");
  if (which_s != "E" && which_s != "G") throw ConfigError("decay: which must be 'E' or 'G'");
  const EnergyKind which = which_s == "E" ? EnergyKind::E : EnergyKind::G;
  const double t0 = get_num(cfg, "t0", base);
  const double t1 = get_num(cfg, "t1", base + 3.0);
  const auto nphi = positive_size(get_int(cfg, "nphi", 513), "nphi", 33);
  const auto nt = positive_size(get_int(cfg, "nt", 401), "nt", 33);
  const auto K = positive_size(get_int(cfg, "K", 64), "K", 2);

  if (cfg.contains("modes") || cfg.contains("slow") || cfg.contains("lambda_inf")) {
    const LinearizedTrajectory traj = trajectory_from_config(cfg, nphi, nt, t0, t1);
    const ThreeAnnuliReport rep = three_annuli_check(traj, base, eta, c0, which, K);
    results["check"] = annuli_to_json(rep);
    const ConvexityReport conv =
        convexity_check(traj, base, base + 3.0, default_c_hat(), K);
    json cj;
    cj["min_margin"] = num(conv.min_margin, traj.analytic.present ? 1e-10 : 1e-6);
    cj["argmin_t"] = conv.argmin_t;
    cj["c_hat"] = conv.c_hat;
    results["convexity"] = std::move(cj);
    if (get_bool(cfg, "assert", true))
      log.record("no_violation", rep.verdict != AnnuliVerdict::violation,
                 static_cast<double>(rep.verdict != AnnuliVerdict::violation), 0.0);
  }

  const auto n_random = positive_size(get_int(cfg, "random_solutions", 0), "random_solutions", 0);
  if (n_random > 0) {
    std::size_t k_lo = 2, k_hi = 10;
    if (cfg.contains("k_range")) {
      const auto& kr = cfg["k_range"];
      if (!kr.is_array() || kr.size() != 2) throw ConfigError("decay: k_range must be [lo, hi]");
      k_lo = positive_size(kr[0].get<std::int64_t>(), "k_range lo", 2);
      k_hi = positive_size(kr[1].get<std::int64_t>(), "k_range hi", 2);
    }
    const double amp = get_num(cfg, "amplitude", 1.0);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_k(k_lo, k_hi);
    std::uniform_int_distribution<std::size_t> pick_n(1, 4);
    std::uniform_real_distribution<double> pick_amp(-amp, amp);

    const CylinderGrid small = CylinderGrid::standard(33, 49, base, base + 3.0);
    std::size_t violations = 0, holds = 0, hyp_false = 0;
    for (std::size_t i = 0; i < n_random; ++i) {
      std::vector<ModeAmplitude> ms;
      const std::size_t nm = pick_n(rng);
      for (std::size_t j = 0; j < nm; ++j)
        ms.push_back({pick_k(rng), pick_amp(rng), pick_amp(rng), 0.0});
      const LinearizedTrajectory traj = synthesize_modes(std::move(ms), 0.0, small);
      const ThreeAnnuliReport rep = three_annuli_check(traj, base, eta, c0, EnergyKind::E, K);
      switch (rep.verdict) {
        case AnnuliVerdict::violation: ++violations; break;
        case AnnuliVerdict::implication_holds: ++holds; break;
        default: ++hyp_false; break;
      }
    }
    json rj;
    rj["count"] = n_random;
    rj["violations"] = violations;
    rj["implication_holds"] = holds;
    rj["hypothesis_false"] = hyp_false;
    results["random_suite"] = std::move(rj);
    if (get_bool(cfg, "assert", true))
      log.record("random_suite_no_violation", violations == 0, static_cast<double>(violations),
                 0.0);
  }
  artifacts.clear();
  (void)outdir;
}

// ---- linearize-check ----

void run_linearize_check(const json& cfg, std::uint64_t, const std::string& outdir,
                         AssertionLog& log, json& results, std::vector<std::string>& artifacts) {
  check_keys(cfg, "linearize-check config",
             {"modes", "lambda_inf", "slow", "deltas", "t0", "t1", "nphi", "nt", "flip_sign",
              "assert", "output_dir"});
  const double t0 = get_num(cfg, "t0", 0.0);
  const double t1 = get_num(cfg, "t1", 4.0);
  const auto nphi = positive_size(get_int(cfg, "nphi", 513), "nphi", 65);
  const auto nt = positive_size(get_int(cfg, "nt", 401), "nt", 65);
  std::vector<double> deltas = {1e-2, 5e-3, 2.5e-3};
  if (cfg.contains("deltas")) {
    if (!cfg["deltas"].is_array()) throw ConfigError("linearize-check: deltas must be an array");
    deltas = cfg["deltas"].get<std::vector<double>>();
  }
  const bool flip = get_bool(cfg, "flip_sign", false);

  LinearizedTrajectory traj = trajectory_from_config(cfg, nphi, nt, t0, t1);
  if (flip) traj.lambda = -1.0 * traj.lambda;

  const ConsistencyTable table = linearization_consistency(traj, deltas);
  json rows = json::array();
  for (const auto& r : table.rows) {
    json e;
    e["delta"] = r.delta;
    e["pde"] = num(r.pde, 1e-6);
    e["bc"] = num(r.bc, 1e-15);
    e["transmission"] = num(r.transmission, 1e-6);
    rows.push_back(std::move(e));
  }
  results["rows"] = std::move(rows);

  // fit-vs-last-pair spread as the exponent error estimate
  auto pair_slope = [&](auto pick) {
    const auto n = table.rows.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double r0 = pick(table.rows[n - 2]), r1 = pick(table.rows[n - 1]);
    if (!(r0 > 0.0) || !(r1 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::log(r0 / r1) / std::log(table.rows[n - 2].delta / table.rows[n - 1].delta);
  };
  auto p_with_err = [&](double p, auto pick) {
    const double p2 = pair_slope(pick);
    return num(p, std::isfinite(p2) && std::isfinite(p) ? std::abs(p - p2) : 0.0);
  };
  results["p_pde"] = p_with_err(table.p_pde, [](const ConsistencyRow& r) { return r.pde; });
  results["p_bc"] = p_with_err(table.p_bc, [](const ConsistencyRow& r) { return r.bc; });
  results["p_transmission"] =
      p_with_err(table.p_transmission, [](const ConsistencyRow& r) { return r.transmission; });
  results["bc_at_floor"] = table.bc_at_floor;
  results["floor_level"] = table.floor_level;
  results["sign_flipped"] = flip;

  if (get_bool(cfg, "assert", true)) {
    if (flip) {
      log.record("negative_control_order_drop", table.p_pde <= 1.2, table.p_pde, 1.2);
    } else {
      log.record("pde_order_quadratic", table.p_pde >= 1.9 && table.p_pde <= 2.1, table.p_pde,
                 0.1);
      log.record("transmission_order", table.p_transmission >= 1.9, table.p_transmission, 1.9);
      log.record("dirichlet_floor",
                 table.bc_at_floor || (table.p_bc >= 1.9 && table.p_bc <= 2.1),
                 table.floor_level, 1e-12);
    }
  }
  artifacts.clear();
  (void)outdir;
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds = {"spectrum",   "expand", "evolve",
                                                "identities", "decay",  "linearize-check"};
  return cmds;
}

RunReport run(const std::string& command, const nlohmann::ordered_json& config, std::uint64_t seed,
              const std::string& output_dir_override) {
  RunReport out;
  out.report["schema_version"] = kSchemaVersion;
  out.report["command"] = command;
  out.report["seed"] = seed;
  out.report["config"] = config;

  const auto t_start = std::chrono::steady_clock::now();
  AssertionLog log;
  json results;
  int code = static_cast<int>(ExitCode::ok);

  std::string outdir = ".";
  try {
    if (!config.is_object()) throw ConfigError("config root must be an object");
    if (const char* env = std::getenv("CRACKTIP_OUTPUT_DIR"); env != nullptr && *env != '\0')
      outdir = env;
    else if (!output_dir_override.empty())
      outdir = output_dir_override;
    else
      outdir = get_str(config, "output_dir", ".");

    if (command == "spectrum")
      run_spectrum(config, seed, outdir, log, results, out.artifacts);
    else if (command == "expand")
      run_expand(config, seed, outdir, log, results, out.artifacts);
    else if (command == "evolve")
      run_evolve(config, seed, outdir, log, results, out.artifacts);
    else if (command == "identities")
      run_identities(config, seed, outdir, log, results, out.artifacts);
    else if (command == "decay")
      run_decay(config, seed, outdir, log, results, out.artifacts);
    else if (command == "linearize-check")
      run_linearize_check(config, seed, outdir, log, results, out.artifacts);
    else
      throw ConfigError("unknown command '" + command + "'");
    if (!log.all_pass) code = static_cast<int>(ExitCode::assertion_failure);
  } catch (const ConfigError& e) {
    out.report["error"] = e.what();
    code = static_cast<int>(ExitCode::config_error);
  } catch (const std::invalid_argument& e) {
    out.report["error"] = e.what();
    code = static_cast<int>(ExitCode::config_error);
  } catch (const std::exception& e) {
    out.report["error"] = e.what();
    code = static_cast<int>(ExitCode::numerical_failure);
  }

  out.report["results"] = std::move(results);
  out.report["assertions"] = std::move(log.entries);
  out.report["all_assertions_pass"] = log.all_pass;
  json arts = json::array();
  for (const auto& a : out.artifacts) arts.push_back(a);
  out.report["artifacts"] = std::move(arts);
  const auto t_end = std::chrono::steady_clock::now();
  out.report["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t_end - t_start)
          .count();
  out.exit_code = code;

  if (code != static_cast<int>(ExitCode::config_error)) {
    try {
      const std::string path = artifact_path(outdir, command + "-report.json");
      std::ofstream rf(path);
      rf << out.report.dump(2) << '\n';
      out.artifacts.push_back(path);
    } catch (const std::exception&) {
      // report writing must not mask the run outcome
    }
  }
  return out;
}

}  // namespace cracktip
