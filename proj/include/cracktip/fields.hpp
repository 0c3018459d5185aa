#pragma once

#include <functional>
#include <utility>

namespace cracktip {

// angular chart of the slit disk: the crack lies on phi in {0, 2pi},
// values and gradients at the slit are the one-sided limits from inside
struct PolarPoint {
  double r = 1.0;
  double phi = 0.0;

  void validate() const;
};

// crack r -> r(cos alpha(r), sin alpha(r)) with two derivatives of alpha
struct CrackParametrization {
  std::function<double(double)> alpha;
  std::function<double(double)> dalpha;
  std::function<double(double)> ddalpha;

  static CrackParametrization zero();
  static CrackParametrization linear(double eps);  // alpha(r) = eps*r
  static CrackParametrization from_function(std::function<double(double)> a,
                                            double fd_step = 1e-5);
  // sup over a sample grid of r|a'| + r^2|a''|
  double slope_bound(double r_lo = 1e-3, double r_hi = 1.0, std::size_t samples = 256) const;
};

// scalar field on the slit disk given in the angular chart, with optional
// analytic polar gradient (d_r, d_phi/r)
struct PolarField {
  std::function<double(double, double)> value;                       // (phi, r)
  std::function<std::pair<double, double>(double, double)> gradient;  // (phi, r) -> (u_r, u_phi/r)

  bool has_gradient() const { return static_cast<bool>(gradient); }
};

PolarField rad_field();
PolarField isq_field();

double rad(const PolarPoint& p);
double isq(const PolarPoint& p);

enum class TipField { rad, isq };

// analytic (u_r, u_phi/r); |grad|^2 = d_r^2 + d_phi_over_r^2
std::pair<double, double> grad_polar(TipField which, const PolarPoint& p);

// Dirichlet energy over the disk of radius r, polar tensor quadrature
double disk_energy(const PolarField& u, double r, std::size_t ns = 513, std::size_t nphi = 513);

// (phi,r) -> rho^{-1/2} u(phi + alpha(rho r), rho r) together with the rescaled crack
std::pair<PolarField, CrackParametrization> rescale(const PolarField& u,
                                                    const CrackParametrization& alpha, double rho);

}  // namespace cracktip
