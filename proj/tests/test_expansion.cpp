#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cracktip/expansion.hpp"
#include "cracktip/linearized.hpp"

using namespace cracktip;
namespace {

constexpr double pi = std::numbers::pi;

ModeCoefficients random_coeffs(std::size_t K, std::mt19937& rng) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  ModeCoefficients c;
  c.a0 = amp(rng);
  c.a1 = amp(rng);
  c.a.resize(K - 1);
  for (auto& x : c.a) x = amp(rng);
  return c;
}

double coeff_distance(const ModeCoefficients& a, const ModeCoefficients& b) {
  double d = std::max(std::abs(a.a0 - b.a0), std::abs(a.a1 - b.a1));
  const std::size_t n = std::min(a.a.size(), b.a.size());
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(a.a[i] - b.a[i]));
  for (std::size_t i = n; i < a.a.size(); ++i) d = std::max(d, std::abs(a.a[i]));
  for (std::size_t i = n; i < b.a.size(); ++i) d = std::max(d, std::abs(b.a[i]));
  return d;
}

}  // namespace

TEST_CASE("basis members expand to unit vectors") {
  const SpectralBasis basis = SpectralBasis::build(8);

  SampledFunction1D z0{basis.grid, basis.zeta[0], Parity::odd};
  auto c = expand(z0, basis);
  CHECK(std::abs(c.a0 - 1.0) <= 1e-8);
  CHECK(std::abs(c.a1) <= 1e-7);
  for (double a : c.a) CHECK(std::abs(a) <= 1e-7);

  SampledFunction1D z1{basis.grid, basis.zeta[1], Parity::odd};
  c = expand(z1, basis);
  CHECK(std::abs(c.a0) <= 1e-8);
  CHECK(std::abs(c.a1 - 1.0) <= 1e-7);
  for (double a : c.a) CHECK(std::abs(a) <= 1e-7);

  for (std::size_t k = 2; k <= 5; ++k) {
    SampledFunction1D zk{basis.grid, basis.zeta[k], Parity::odd};
    c = expand(zk, basis);
    CHECK(std::abs(c.a0) <= 1e-8);
    CHECK(std::abs(c.a1) <= 1e-7);
    for (std::size_t i = 0; i < c.a.size(); ++i)
      CHECK(std::abs(c.a[i] - (i + 2 == k ? 1.0 : 0.0)) <= 1e-7);
    CHECK(c.truncation_error <= 1e-6);
  }
}

TEST_CASE("expansion and reconstruction invert each other") {
  const SpectralBasis basis = SpectralBasis::build(12);
  std::mt19937 rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_coeffs(12, rng);
    const auto f = reconstruct(c, basis);
    const auto back = expand(f, basis);
    CHECK(coeff_distance(c, back) <= 1e-9);
  }
}

TEST_CASE("coefficient norm is equivalent to the sampled first-order norm") {
  const SpectralBasis basis = SpectralBasis::build(12);
  std::mt19937 rng(321);
  double lo = 1e300, hi = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_coeffs(12, rng);
    const auto f = reconstruct(c, basis);
    double sq = c.a0 * c.a0 + c.a1 * c.a1;
    for (double a : c.a) sq += a * a;
    const double ratio = sobolev_norm_sq(f, 1) / sq;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    CHECK(ratio >= 0.1);
    CHECK(ratio <= 10.0);
  }
  CHECK(hi / lo < 10.0);
}

TEST_CASE("slow-mode direction has no component on the proper modes") {
  const SpectralBasis basis = SpectralBasis::build(24);
  SampledFunction1D z0{basis.grid, basis.zeta[0], Parity::odd};
  const auto c = expand(z0, basis);
  for (double a : c.a) CHECK(std::abs(a) <= 1e-7);
}

TEST_CASE("even and odd parts split a cylinder field exactly") {
  const CylinderGrid grid = CylinderGrid::standard(129, 33, 0.0, 1.0);
  const CylinderField even_in = CylinderField::sample(
      grid, [](double phi, double t) { return std::sin(0.5 * phi) * (1.0 + 0.1 * t); });
  auto [even, odd] = parity_split(even_in);
  double worst = 0.0;
  for (std::size_t i = 0; i < even.data().size(); ++i) {
    worst = std::max(worst, std::abs(even.data()[i] - even_in.data()[i]));
    worst = std::max(worst, std::abs(odd.data()[i]));
  }
  CHECK(worst <= 1e-14);

  const CylinderField odd_in = CylinderField::sample(
      grid, [](double phi, double t) { return std::cos(0.5 * phi) * std::exp(-0.2 * t); });
  auto [even2, odd2] = parity_split(odd_in);
  worst = 0.0;
  for (std::size_t i = 0; i < odd2.data().size(); ++i) {
    worst = std::max(worst, std::abs(odd2.data()[i] - odd_in.data()[i]));
    worst = std::max(worst, std::abs(even2.data()[i]));
  }
  CHECK(worst <= 1e-14);

  // the angular derivative of an odd field is even
  const CylinderField d = diff_phi(odd_in, 1);
  auto [deven, dodd] = parity_split(d);
  double defect = 0.0;
  for (std::size_t i = 0; i < dodd.data().size(); ++i)
    defect = std::max(defect, std::abs(dodd.data()[i]));
  CHECK(defect <= 1e-10 * d.max_abs());
}

TEST_CASE("per-slice trajectory expansion matches the slice-by-slice result") {
  const CylinderGrid grid = CylinderGrid::standard(257, 49, 0.0, 2.0);
  const LinearizedTrajectory traj =
      synthesize_modes({{2, 0.8, 0.1, 0.0}, {4, -0.3, 0.0, 0.0}}, 0.2, grid);
  const SpectralBasis basis = SpectralBasis::build(8, grid.phi);
  const CylinderField zeta = traj.zeta();
  const CoefficientTrajectory ct = expand_trajectory(zeta, basis);
  REQUIRE(ct.t.n == grid.t.n);
  for (std::size_t it : {std::size_t{0}, grid.t.n / 2, grid.t.n - 1}) {
    const auto slice = zeta.phi_section(it, Parity::odd);
    const auto c = expand(slice, basis);
    CHECK(std::abs(c.a0 - ct.a0[it]) <= 1e-12);
    CHECK(std::abs(c.a1 - ct.a1[it]) <= 1e-12);
    for (std::size_t i = 0; i < c.a.size(); ++i)
      CHECK(std::abs(c.a[i] - ct.a[i][it]) <= 1e-12);
  }
}

TEST_CASE("truncation error reports the unexpanded remainder") {
  const SpectralBasis small = SpectralBasis::build(3);
  const SpectralBasis large = SpectralBasis::build(12);
  SampledFunction1D z6{large.grid, large.zeta[6], Parity::odd};
  const auto c = expand(z6, small);
  CHECK(c.truncation_error > 0.1);  // mode 6 is invisible to a K=3 basis
  const auto cc = expand(z6, large);
  CHECK(cc.truncation_error <= 1e-6);
}

TEST_CASE("bad inputs are rejected") {
  const SpectralBasis basis = SpectralBasis::build(4);
  auto not_odd = sample(basis.grid, [](double phi) { return std::cos(phi); });
  CHECK_THROWS_AS(expand(not_odd, basis), std::invalid_argument);

  ModeCoefficients c;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.a = {1.0, 0.0, 0.0};
  c.a0 = std::nan("");
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  ModeCoefficients big;
  big.a.assign(9, 0.1);
  CHECK_THROWS_AS(reconstruct(big, basis), std::invalid_argument);
}
