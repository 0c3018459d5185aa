#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cracktip/fields.hpp"

namespace cracktip {

// planar test field with analytic Jacobian, row-major (d1/dx, d1/dy, d2/dx, d2/dy)
struct VectorField2D {
  std::string name;
  std::function<std::array<double, 2>(double, double)> eta;
  std::function<std::array<double, 4>(double, double)> jacobian;
  bool conformal_flag = false;

  // worst Cauchy-Riemann violation at a point
  double conformal_defect(double x, double y) const;
};

VectorField2D identity_field();
VectorField2D constant_field(double vx, double vy);
VectorField2D rotation_field();
VectorField2D z_squared_field();
VectorField2D axis_field();  // (x1, 0), not conformal

// eta(z) = sum_m (a_m + i b_m) z^m from coefficient pairs (a_m, b_m)
VectorField2D conformal_polynomial(const std::vector<std::pair<double, double>>& coeffs);

// general bivariate polynomial components; coeffs[c][i][j] multiplies x^i y^j
VectorField2D polynomial_field(const std::vector<std::vector<std::vector<double>>>& coeffs,
                               std::string name = "polynomial");

struct IdentityTerms {
  double bulk = 0.0;
  double crack = 0.0;
  double boundary = 0.0;
  double endpoint = 0.0;
};

struct IdentityReport {
  std::string identity;
  std::string field_name;
  std::string eta_name;
  double radius = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  IdentityTerms terms;
  IdentityTerms term_estimates;     // half-resolution extrapolation error per term
  double richardson_estimate = 0.0; // total
  double crack_length = 0.0;
  double conformal_defect_max = 0.0;
  bool endpoint_flipped = false;
  std::size_t ns = 0, nphi = 0, nboundary = 0;
  std::vector<std::pair<std::string, double>> extra;
};

struct IdentityOptions {
  std::size_t ns = 513;
  std::size_t nphi = 513;
  std::size_t nboundary = 2049;
  std::size_t ncrack = 801;
  bool flip_endpoint_orientation = false;
};

inline constexpr double kQuadratureTol = 1e-8;

// bulk + crack = boundary + endpoint, for inner variations along eta
IdentityReport boundary_variation_report(const PolarField& u, const CrackParametrization& crack,
                                         double r, const VectorField2D& eta,
                                         const IdentityOptions& opt = {});

// eta(x) = x specialization: crack length over r against the circle defect integral
IdentityReport dlms(const PolarField& u, const CrackParametrization& crack, double r,
                    const IdentityOptions& opt = {});

// singleton-intersection circle identity, with the polar conjugate form attached
IdentityReport am_identity(const PolarField& u, const CrackParametrization& crack, double r,
                           const IdentityOptions& opt = {});

// A - B form of the same identity in polar coordinates at radius r
IdentityReport am_polar_conjugate(const PolarField& u, double r, const IdentityOptions& opt = {});

// arclength of the crack inside radius r
double crack_length_inside(const CrackParametrization& crack, double r, std::size_t m = 801);

}  // namespace cracktip
