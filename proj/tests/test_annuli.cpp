#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cracktip/annuli.hpp"
#include "cracktip/ventsel.hpp"

using namespace cracktip;
namespace {

constexpr double pi = std::numbers::pi;

LinearizedTrajectory decaying_pair(double c2, double c3, const CylinderGrid& grid) {
  return synthesize_modes({{2, c2, 0.0, 0.0}, {3, c3, 0.0, 0.0}}, 0.0, grid);
}

// constant-amplitude mode profile: not a solution of the system, so the
// dichotomy genuinely fails on it
LinearizedTrajectory frozen_mode_field(const CylinderGrid& grid) {
  const auto m2 = eigenvalue(2, grid.phi);
  const auto z1 = basis_function(1, grid.phi);
  const double z20 = m2.profile.values.front();
  LinearizedTrajectory traj;
  traj.v = CylinderField(grid);
  for (std::size_t it = 0; it < grid.t.n; ++it)
    for (std::size_t ip = 0; ip < grid.phi.n; ++ip)
      traj.v.at(ip, it) = m2.profile.values[ip] - z20 * z1.values[ip];
  traj.lambda = TimeFunction::zero();
  return traj;
}

}  // namespace

TEST_CASE("energies are nonnegative and combined by the max rule") {
  const CylinderGrid grid = CylinderGrid::standard(129, 201, 0.0, 4.0);
  const LinearizedTrajectory traj = decaying_pair(0.7, -0.4, grid);
  const AnnulusEnergies e = energies(traj, 0.5, 1.5, 0.01);
  CHECK(e.E >= 0.0);
  CHECK(e.F >= 0.0);
  CHECK(e.G == doctest::Approx(std::max(e.E, 0.01 * e.F)).epsilon(1e-14));
  CHECK(e.analytic_path);
  CHECK(e.sigma == 0.5);
  CHECK(e.s == 1.5);
  CHECK_THROWS_AS(energies(traj, 3.5, 4.5, 0.01), std::invalid_argument);
}

TEST_CASE("the functional is quadratic under amplitude scaling") {
  const CylinderGrid grid = CylinderGrid::standard(129, 201, 0.0, 4.0);
  const LinearizedTrajectory one = decaying_pair(0.5, 0.3, grid);
  const LinearizedTrajectory two = decaying_pair(1.0, 0.6, grid);
  const AnnulusEnergies e1 = energies(one, 0.0, 1.0, 0.01);
  const AnnulusEnergies e2 = energies(two, 0.0, 1.0, 0.01);
  CHECK(e2.E == doctest::Approx(4.0 * e1.E).epsilon(1e-12));
  CHECK(e2.F == doctest::Approx(4.0 * e1.F).epsilon(1e-12));
  CHECK(e2.G == doctest::Approx(4.0 * e1.G).epsilon(1e-12));
}

TEST_CASE("analytic and sampled evaluation paths agree") {
  const CylinderGrid grid = CylinderGrid::standard(513, 401, 0.0, 4.0);
  const LinearizedTrajectory traj = decaying_pair(0.8, 0.2, grid);
  const AnnulusEnergies exact = energies(traj, 0.5, 1.5, 0.01);

  LinearizedTrajectory stripped = traj;
  stripped.analytic.present = false;
  const AnnulusEnergies fd = energies(stripped, 0.5, 1.5, 0.01);
  CHECK_FALSE(fd.analytic_path);
  CHECK(fd.E == doctest::Approx(exact.E).epsilon(1e-5));
  CHECK(fd.F == doctest::Approx(exact.F).epsilon(1e-5));
  CHECK(fd.error_estimate >= 0.0);
  CHECK(std::abs(fd.E - exact.E) <= fd.error_estimate + 1e-5 * exact.E);
}

TEST_CASE("pure growth and pure decay land on opposite branches") {
  const CylinderGrid grid = CylinderGrid::standard(65, 129, 0.0, 3.0);
  const LinearizedTrajectory grow =
      synthesize_modes({{2, 0.0, 1.0, 0.0}}, 0.0, grid);
  const auto up = three_annuli_check(grow, 0.0, kDefaultEta, kDefaultC0, EnergyKind::E);
  CHECK(up.verdict == AnnuliVerdict::implication_holds);

  const LinearizedTrajectory shrink =
      synthesize_modes({{2, 1.0, 0.0, 0.0}}, 0.0, grid);
  const auto down = three_annuli_check(shrink, 0.0, kDefaultEta, kDefaultC0, EnergyKind::E);
  CHECK(down.verdict == AnnuliVerdict::hypothesis_false);

  const LinearizedTrajectory zero = synthesize_modes({}, 0.0, grid);
  const auto none = three_annuli_check(zero, 0.0, kDefaultEta, kDefaultC0, EnergyKind::E);
  CHECK(none.verdict == AnnuliVerdict::hypothesis_false);

  CHECK_THROWS_AS(three_annuli_check(grow, 0.5, kDefaultEta, kDefaultC0, EnergyKind::E),
                  std::invalid_argument);
}

TEST_CASE("no violation across a randomized family of genuine solutions") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick_k(2, 10);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const CylinderGrid grid = CylinderGrid::standard(33, 49, 0.0, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<ModeAmplitude> modes;
    const std::size_t nm = 1 + static_cast<std::size_t>(rng() % 4);
    for (std::size_t j = 0; j < nm; ++j) modes.push_back({pick_k(rng), amp(rng), amp(rng), 0.0});
    const LinearizedTrajectory traj = synthesize_modes(std::move(modes), 0.0, grid);
    const auto rep = three_annuli_check(traj, 0.0, kDefaultEta, kDefaultC0, EnergyKind::E);
    CHECK(rep.verdict != AnnuliVerdict::violation);
  }
}

TEST_CASE("iterated dichotomy certifies geometric decay") {
  const CylinderGrid grid = CylinderGrid::standard(65, 257, 0.0, 7.0);
  const LinearizedTrajectory traj = decaying_pair(1.0, 0.5, grid);
  double prev = -1.0;
  for (int k = 0; k <= 3; ++k) {
    const auto rep =
        three_annuli_check(traj, static_cast<double>(k), kDefaultEta, kDefaultC0, EnergyKind::E);
    CHECK(rep.verdict == AnnuliVerdict::hypothesis_false);
    const double g =
        energies(traj, static_cast<double>(k), static_cast<double>(k + 1), kDefaultC0).G;
    if (prev >= 0.0) CHECK(g <= (1.0 - 0.5 * kDefaultEta) * prev);
    prev = g;
  }
}

TEST_CASE("the conjugated-energy form records its integral precondition") {
  const CylinderGrid grid = CylinderGrid::standard(513, 201, 0.0, 3.0);
  const LinearizedTrajectory slow = slow_mode(1.0, 0.0, 0.0, grid);
  const auto rep = three_annuli_check(slow, 0.0, kDefaultEta, kDefaultC0, EnergyKind::G);
  CHECK_FALSE(rep.extra_condition_ok);
  CHECK(rep.extra_condition_max == doctest::Approx(1.5 * pi).epsilon(1e-5));
  CHECK(rep.verdict == AnnuliVerdict::implication_holds);  // F grows along the slow family
  CHECK(rep.which == EnergyKind::G);
}

TEST_CASE("a non-solution plateau field is caught, then excused by the precondition") {
  const CylinderGrid grid = CylinderGrid::standard(513, 201, 0.0, 3.0);
  const LinearizedTrajectory fake = frozen_mode_field(grid);
  const auto e_rep = three_annuli_check(fake, 0.0, kDefaultEta, kDefaultC0, EnergyKind::E);
  CHECK(e_rep.verdict == AnnuliVerdict::violation);
  CHECK(to_string(e_rep.verdict) == "VIOLATION");

  const auto g_rep = three_annuli_check(fake, 0.0, kDefaultEta, kDefaultC0, EnergyKind::G);
  CHECK(g_rep.verdict == AnnuliVerdict::precondition_violated);
  CHECK_FALSE(g_rep.extra_condition_ok);
}

TEST_CASE("convexity margin for single and mixed branches") {
  const CylinderGrid grid = CylinderGrid::standard(129, 201, 0.0, 4.0);
  const double c_hat = default_c_hat();
  const double mu2 = eigenvalue(2).mu;
  CHECK(c_hat == doctest::Approx(2.0 * mu2 * mu2).epsilon(1e-12));

  for (std::size_t k : {std::size_t{2}, std::size_t{4}, std::size_t{6}}) {
    const LinearizedTrajectory traj = synthesize_modes({{k, 1.0, 0.0, 0.0}}, 0.0, grid);
    CHECK(convexity_check(traj, 0.5, 3.5, c_hat).min_margin >= 0.0);
  }
  const LinearizedTrajectory mixed = synthesize_modes({{2, 1.0, 0.4, 0.0}}, 0.0, grid);
  CHECK(convexity_check(mixed, 0.5, 3.5, c_hat).min_margin >= 0.0);

  const LinearizedTrajectory zero = synthesize_modes({}, 0.0, grid);
  CHECK(convexity_check(zero, 0.5, 3.5, c_hat).min_margin == doctest::Approx(0.0));
}

TEST_CASE("verdict names for reports") {
  CHECK(to_string(AnnuliVerdict::hypothesis_false) == "hypothesis_false");
  CHECK(to_string(AnnuliVerdict::implication_holds) == "implication_holds");
  CHECK(to_string(AnnuliVerdict::precondition_violated) == "precondition_violated");
}
