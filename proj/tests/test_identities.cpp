#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cracktip/identities.hpp"

using namespace cracktip;
namespace {

constexpr double pi = std::numbers::pi;

VectorField2D random_conformal(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<std::pair<double, double>> c(5);
  for (auto& [a, b] : c) {
    a = coeff(rng);
    b = coeff(rng);
  }
  return conformal_polynomial(c);
}

std::vector<std::vector<std::vector<double>>> random_poly_coeffs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<std::vector<std::vector<double>>> c(2,
      std::vector<std::vector<double>>(4, std::vector<double>(4, 0.0)));
  for (auto& comp : c)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j + i < 4; ++j) comp[i][j] = coeff(rng);
  return c;
}

}  // namespace

TEST_CASE("circle defect form of the length identity at several radii") {
  const PolarField u = rad_field();
  const CrackParametrization crack = CrackParametrization::zero();
  for (double r : {0.25, 0.5, 1.0}) {
    const IdentityReport rep = dlms(u, crack, r);
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(std::abs(rep.residual) <= 1e-7);
    CHECK(rep.crack_length == doctest::Approx(r).epsilon(1e-10));
    REQUIRE(rep.extra.size() == 2);
    CHECK(rep.extra[0].first == "general_lhs");
    CHECK(std::abs(rep.extra[0].second - rep.extra[1].second) <= 1e-7);
  }
}

TEST_CASE("translations are stationary directions for the tip profile") {
  const CrackParametrization crack = CrackParametrization::zero();
  for (const auto& eta : {constant_field(1, 0), constant_field(0, 1)}) {
    const IdentityReport rep = boundary_variation_report(rad_field(), crack, 1.0, eta);
    CHECK(std::abs(rep.residual) <= 1e-7);
    CHECK(rep.terms.bulk == 0.0);   // zero Jacobian, integrand identically zero
    CHECK(rep.terms.crack == 0.0);
  }
  const IdentityReport along = boundary_variation_report(rad_field(), crack, 1.0, constant_field(1, 0));
  CHECK(along.terms.boundary == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(along.terms.endpoint == doctest::Approx(1.0).epsilon(1e-12));
  const IdentityReport across = boundary_variation_report(rad_field(), crack, 1.0, constant_field(0, 1));
  CHECK(std::abs(across.terms.boundary) <= 1e-9);
  CHECK(std::abs(across.terms.endpoint) <= 1e-12);
}

TEST_CASE("the conjugate profile pays twice the tip displacement instead") {
  // the conjugate field vanishes on the crack rather than having zero normal
  // derivative, which flips the sign of the tip release term: moving the tip
  // by eta(0) leaves residual -2 eta_x(0) in the free-crack identity
  const CrackParametrization crack = CrackParametrization::zero();
  const IdentityReport x_move =
      boundary_variation_report(isq_field(), crack, 1.0, constant_field(1, 0));
  CHECK(x_move.residual == doctest::Approx(-2.0).epsilon(1e-9));
  const IdentityReport y_move =
      boundary_variation_report(isq_field(), crack, 1.0, constant_field(0, 1));
  CHECK(std::abs(y_move.residual) <= 1e-7);
  const IdentityReport tip_fixed =
      boundary_variation_report(isq_field(), crack, 1.0, axis_field());
  CHECK(std::abs(tip_fixed.residual) <= std::max(1e-7, 10.0 * tip_fixed.richardson_estimate));
}

TEST_CASE("rotation kills every term") {
  const IdentityReport rep =
      boundary_variation_report(rad_field(), CrackParametrization::zero(), 1.0, rotation_field());
  CHECK(std::abs(rep.terms.bulk) <= 1e-12);
  CHECK(std::abs(rep.terms.crack) <= 1e-12);
  CHECK(std::abs(rep.terms.boundary) <= 1e-12);
  CHECK(std::abs(rep.terms.endpoint) <= 1e-12);
  CHECK(std::abs(rep.residual) <= 1e-12);
}

TEST_CASE("conformal variations have pointwise-zero bulk integrand") {
  const CrackParametrization crack = CrackParametrization::zero();
  const IdentityReport sq = boundary_variation_report(rad_field(), crack, 1.0, z_squared_field());
  CHECK(sq.conformal_defect_max <= 1e-10);
  CHECK(std::abs(sq.terms.bulk) <= 1e-12);
  CHECK(std::abs(sq.residual) <= 1e-7);

  std::mt19937_64 rng(911);
  for (int trial = 0; trial < 10; ++trial) {
    const VectorField2D eta = random_conformal(rng);
    const IdentityReport rep = boundary_variation_report(rad_field(), crack, 1.0, eta);
    CHECK(std::abs(rep.terms.bulk) <= 1e-10);
    CHECK(std::abs(rep.residual) <= std::max(1e-7, 10.0 * rep.richardson_estimate));

    // the integrand g2*div(eta) - 2 grad.J grad vanishes by the conformal algebra
    std::uniform_real_distribution<double> rad_d(0.3, 1.0), phi_d(0.1, 2.0 * pi - 0.1);
    for (int p = 0; p < 25; ++p) {
      const double s = rad_d(rng), phi = phi_d(rng);
      const auto g = grad_polar(TipField::rad, {s, phi});
      const double c = std::cos(phi), sn = std::sin(phi);
      const double gx = g.first * c - g.second * sn;
      const double gy = g.first * sn + g.second * c;
      const auto J = eta.jacobian(s * c, s * sn);
      const double g2 = gx * gx + gy * gy;
      const double quad = gx * (J[0] * gx + J[1] * gy) + gy * (J[2] * gx + J[3] * gy);
      CHECK(std::abs(g2 * (J[0] + J[3]) - 2.0 * quad) <= 1e-10);
    }
  }
}

TEST_CASE("non-conformal variations still satisfy the identity within quadrature error") {
  const CrackParametrization crack = CrackParametrization::zero();
  const IdentityReport ax = boundary_variation_report(rad_field(), crack, 1.0, axis_field());
  CHECK(std::abs(ax.residual) <= std::max(1e-7, 10.0 * ax.richardson_estimate));

  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    const auto coeffs = random_poly_coeffs(rng);
    const VectorField2D eta = polynomial_field(coeffs, "random");
    const IdentityReport rep = boundary_variation_report(rad_field(), crack, 1.0, eta);
    CHECK(std::abs(rep.residual) <= std::max(1e-7, 10.0 * rep.richardson_estimate));

    // conjugate profile: same identity up to the flipped tip term -2 eta_x(0)
    const IdentityReport conj = boundary_variation_report(isq_field(), crack, 1.0, eta);
    const double expected = -2.0 * coeffs[0][0][0];
    CHECK(std::abs(conj.residual - expected) <=
          std::max(1e-7, 10.0 * conj.richardson_estimate));
  }
}

TEST_CASE("flipping the endpoint orientation breaks translation by twice the endpoint term") {
  const CrackParametrization crack = CrackParametrization::zero();
  const IdentityReport base =
      boundary_variation_report(rad_field(), crack, 1.0, constant_field(1, 0));
  IdentityOptions opt;
  opt.flip_endpoint_orientation = true;
  const IdentityReport flip =
      boundary_variation_report(rad_field(), crack, 1.0, constant_field(1, 0), opt);
  CHECK(flip.endpoint_flipped);
  CHECK_FALSE(base.endpoint_flipped);
  CHECK(flip.terms.endpoint == doctest::Approx(-base.terms.endpoint).epsilon(1e-12));
  CHECK(flip.residual == doctest::Approx(2.0 * base.terms.endpoint).epsilon(1e-9));
}

TEST_CASE("terms scale linearly with the radius for the dilation direction") {
  const CrackParametrization crack = CrackParametrization::zero();
  const IdentityReport unit = boundary_variation_report(rad_field(), crack, 1.0, identity_field());
  for (double r : {0.25, 0.5}) {
    const IdentityReport rep = boundary_variation_report(rad_field(), crack, r, identity_field());
    CHECK(rep.terms.crack == doctest::Approx(r * unit.terms.crack).epsilon(1e-9));
    CHECK(rep.terms.endpoint == doctest::Approx(r * unit.terms.endpoint).epsilon(1e-9));
    CHECK(std::abs(rep.terms.bulk - r * unit.terms.bulk) <= 1e-9);
    CHECK(std::abs(rep.terms.boundary - r * unit.terms.boundary) <= 1e-9);
    CHECK(std::abs(rep.residual) <= 1e-9);
  }
}

TEST_CASE("singleton-intersection identity and its polar conjugate form") {
  const CrackParametrization crack = CrackParametrization::zero();
  for (double r : {0.5, 1.0}) {
    for (const PolarField& u : {rad_field(), isq_field()}) {
      const IdentityReport rep = am_identity(u, crack, r);
      CHECK(std::abs(rep.residual) <= 1e-8);
      CHECK(rep.rhs == 0.0);
      REQUIRE(rep.extra.size() == 3);
      CHECK(rep.extra[0].first == "polar_A");
      CHECK(rep.extra[1].first == "polar_B");
      CHECK(rep.extra[0].second == doctest::Approx(rep.extra[1].second).epsilon(1e-8));
      CHECK(std::abs(rep.extra[2].second) <= 1e-8);
    }
  }
  const IdentityReport polar = am_polar_conjugate(isq_field(), 0.7);
  CHECK(polar.identity == "am_polar_conjugate");
  CHECK(polar.lhs == doctest::Approx(polar.rhs).epsilon(1e-8));
}

TEST_CASE("crack length matches the closed form for a linearly turning crack") {
  const double eps = 0.2;
  const CrackParametrization crack = CrackParametrization::linear(eps);
  for (double r : {0.5, 1.0}) {
    // speed = sqrt(1 + eps^2 s^2) for alpha(s) = eps s
    const double exact =
        0.5 * (r * std::sqrt(1.0 + eps * eps * r * r) + std::asinh(eps * r) / eps);
    CHECK(crack_length_inside(crack, r) == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("input validation") {
  VectorField2D fake = axis_field();
  fake.conformal_flag = true;
  CHECK_THROWS_AS(
      boundary_variation_report(rad_field(), CrackParametrization::zero(), 1.0, fake),
      std::invalid_argument);
  CHECK_THROWS_AS(
      boundary_variation_report(rad_field(), CrackParametrization::zero(), 0.0, identity_field()),
      std::invalid_argument);
  PolarField bare;
  bare.value = [](double, double) { return 0.0; };
  CHECK_THROWS_AS(boundary_variation_report(bare, CrackParametrization::zero(), 1.0,
                                            identity_field()),
                  std::invalid_argument);
  CHECK_THROWS_AS(am_polar_conjugate(bare, 1.0), std::invalid_argument);
}
