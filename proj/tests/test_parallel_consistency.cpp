#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cracktip/expansion.hpp"
#include "cracktip/linearized.hpp"
#include "cracktip/quadrature.hpp"
#include "cracktip/ventsel.hpp"

using namespace cracktip;
namespace {

constexpr double pi = std::numbers::pi;

CylinderField wavy_field(const CylinderGrid& grid) {
  return CylinderField::sample(grid, [](double phi, double t) {
    return std::sin(1.5 * phi) * std::exp(-0.3 * t) + 0.2 * std::cos(phi) * std::sin(0.7 * t);
  });
}

double field_distance(const CylinderField& a, const CylinderField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

TEST_CASE("parallel 2d quadrature is bitwise identical to the serial reference") {
  auto f = [](double s, double phi) { return std::exp(-s) * std::cos(3.0 * phi) + s * phi; };
  const double par = integrate_2d(f, 0.0, 1.0, 0.0, 2.0 * pi, 257, 129);
  const double ser = integrate_2d_serial(f, 0.0, 1.0, 0.0, 2.0 * pi, 257, 129);
  CHECK(par == ser);

  const double par2 = integrate_2d(f, 0.2, 0.9, 0.1, 5.0, 513, 513);
  const double ser2 = integrate_2d_serial(f, 0.2, 0.9, 0.1, 5.0, 513, 513);
  CHECK(par2 == ser2);
}

TEST_CASE("parallel eigenvalue sweep matches the serial one mode for mode") {
  const Grid1D grid = Grid1D::uniform(0.0, 2.0 * pi, 513);
  const auto par = spectrum(16, grid);
  const auto ser = spectrum_serial(16, grid);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].nu == ser[i].nu);
    CHECK(par[i].c == ser[i].c);
    REQUIRE(par[i].profile.values.size() == ser[i].profile.values.size());
    for (std::size_t j = 0; j < par[i].profile.values.size(); ++j)
      CHECK(par[i].profile.values[j] == ser[i].profile.values[j]);
  }
}

TEST_CASE("parallel derivative fields match the serial twins bitwise") {
  const CylinderGrid grid = CylinderGrid::standard(257, 201, 0.0, 4.0);
  const CylinderField f = wavy_field(grid);
  for (int order : {1, 2}) {
    CHECK(field_distance(diff_phi(f, order), diff_phi_serial(f, order)) == 0.0);
    CHECK(field_distance(diff_t(f, order), diff_t_serial(f, order)) == 0.0);
  }
}

TEST_CASE("parallel trajectory expansion matches the serial twin bitwise") {
  const CylinderGrid grid = CylinderGrid::standard(129, 101, 0.0, 3.0);
  const LinearizedTrajectory traj =
      synthesize_modes({{2, 0.7, 0.0, 0.0}, {5, -0.2, 0.1, 0.0}}, 0.3, grid);
  const SpectralBasis basis = SpectralBasis::build(12, grid.phi);
  const CoefficientTrajectory par = expand_trajectory(traj.zeta(), basis);
  const CoefficientTrajectory ser = expand_trajectory_serial(traj.zeta(), basis);
  for (std::size_t it = 0; it < grid.t.n; ++it) {
    CHECK(par.a0[it] == ser.a0[it]);
    CHECK(par.a1[it] == ser.a1[it]);
  }
  for (std::size_t k = 0; k < par.a.size(); ++k)
    for (std::size_t it = 0; it < grid.t.n; ++it) CHECK(par.a[k][it] == ser.a[k][it]);
}

TEST_CASE("repeated parallel runs are deterministic") {
  const CylinderGrid grid = CylinderGrid::standard(257, 101, 0.0, 2.0);
  const CylinderField f = wavy_field(grid);
  const CylinderField d1 = diff_phi(f, 2);
  const CylinderField d2 = diff_phi(f, 2);
  CHECK(field_distance(d1, d2) == 0.0);

  auto g = [](double s, double phi) { return std::sin(s * phi) + s; };
  const double q1 = integrate_2d(g, 0.0, 1.0, 0.0, 2.0 * pi, 513, 257);
  const double q2 = integrate_2d(g, 0.0, 1.0, 0.0, 2.0 * pi, 513, 257);
  CHECK(q1 == q2);

  const auto s1 = spectrum(8);
  const auto s2 = spectrum(8);
  for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i].nu == s2[i].nu);
}
