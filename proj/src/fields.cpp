#include "cracktip/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cracktip/quadrature.hpp"

namespace cracktip {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// chart slack: rescaled/shifted angles may exceed [0,2pi] by the crack angle
constexpr double kChartMargin = 1.0;
}  // namespace

void PolarPoint::validate() const {
  if (!(r > 0.0)) throw std::invalid_argument("PolarPoint: r must be positive");
  if (phi < -kChartMargin || phi > kTwoPi + kChartMargin)
    throw std::invalid_argument("PolarPoint: phi outside the angular chart");
}

CrackParametrization CrackParametrization::zero() {
  CrackParametrization c;
  c.alpha = [](double) { return 0.0; };
  c.dalpha = [](double) { return 0.0; };
  c.ddalpha = [](double) { return 0.0; };
  return c;
}

CrackParametrization CrackParametrization::linear(double eps) {
  CrackParametrization c;
  c.alpha = [eps](double r) { return eps * r; };
  c.dalpha = [eps](double) { return eps; };
  c.ddalpha = [](double) { return 0.0; };
  return c;
}

CrackParametrization CrackParametrization::from_function(std::function<double(double)> a,
                                                         double fd_step) {
  CrackParametrization c;
  c.alpha = a;
  c.dalpha = [a, fd_step](double r) {
    return (a(r + fd_step) - a(r - fd_step)) / (2.0 * fd_step);
  };
  c.ddalpha = [a, fd_step](double r) {
    return (a(r + fd_step) - 2.0 * a(r) + a(r - fd_step)) / (fd_step * fd_step);
  };
  return c;
}

double CrackParametrization::slope_bound(double r_lo, double r_hi, std::size_t samples) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = r_lo + (r_hi - r_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double b = r * std::abs(dalpha(r)) + r * r * std::abs(ddalpha(r));
    worst = std::max(worst, b);
  }
  return worst;
}

PolarField rad_field() {
  PolarField f;
  f.value = [](double phi, double r) { return std::sqrt(2.0 * r / kPi) * std::cos(phi / 2.0); };
  f.gradient = [](double phi, double r) {
    const double s = 1.0 / std::sqrt(kTwoPi * r);
    return std::pair<double, double>{s * std::cos(phi / 2.0), -s * std::sin(phi / 2.0)};
  };
  return f;
}

PolarField isq_field() {
  PolarField f;
  f.value = [](double phi, double r) { return std::sqrt(2.0 * r / kPi) * std::sin(phi / 2.0); };
  f.gradient = [](double phi, double r) {
    const double s = 1.0 / std::sqrt(kTwoPi * r);
    return std::pair<double, double>{s * std::sin(phi / 2.0), s * std::cos(phi / 2.0)};
  };
  return f;
}

double rad(const PolarPoint& p) {
  p.validate();
  return rad_field().value(p.phi, p.r);
}

double isq(const PolarPoint& p) {
  p.validate();
  return isq_field().value(p.phi, p.r);
}

std::pair<double, double> grad_polar(TipField which, const PolarPoint& p) {
  p.validate();
  return (which == TipField::rad ? rad_field() : isq_field()).gradient(p.phi, p.r);
}

double disk_energy(const PolarField& u, double r, std::size_t ns, std::size_t nphi) {
  if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("disk_energy: need 0 < r <= 1");
  if (!u.has_gradient()) throw std::invalid_argument("disk_energy: field needs a gradient");
  const double floor = 1e-9 * r;  // s*|grad u|^2 is bounded; avoid 0*inf at the tip node
  auto line = [&](double s, double phi) {
    const double se = std::max(s, floor);
    auto [dr, dpr] = u.gradient(phi, se);
    return s == 0.0 ? se * (dr * dr + dpr * dpr) : s * (dr * dr + dpr * dpr);
  };
  return integrate_2d(line, 0.0, r, 0.0, kTwoPi, ns, nphi);
}

std::pair<PolarField, CrackParametrization> rescale(const PolarField& u,
                                                    const CrackParametrization& alpha,
                                                    double rho) {
  if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("rescale: need rho in (0, 1]");
  const double inv_sqrt_rho = 1.0 / std::sqrt(rho);
  PolarField out;
  auto base_value = u.value;
  out.value = [base_value, alpha, rho, inv_sqrt_rho](double phi, double r) {
    if (rho * r > 1.0 + 1e-12)
      throw std::domain_error("rescale: evaluation outside the unit disk");
    return inv_sqrt_rho * base_value(phi + alpha.alpha(rho * r), rho * r);
  };
  if (u.has_gradient()) {
    auto base_grad = u.gradient;
    auto a = alpha;
    out.gradient = [base_grad, a, rho, inv_sqrt_rho](double phi, double r) {
      const double rr = rho * r;
      const double shift = a.alpha(rr);
      auto [dr, dpr] = base_grad(phi + shift, rr);
      // d/dr u(phi + a(rho r), rho r) = rho (a'(rr) u_phi + u_r); u_phi = rr * dpr
      const double out_dr = inv_sqrt_rho * rho * (dr + a.dalpha(rr) * rr * dpr);
      const double out_dpr = inv_sqrt_rho * rho * dpr;  // (1/r) d/dphi = rho * (1/rr) d/dphi
      return std::pair<double, double>{out_dr, out_dpr};
    };
  }
  CrackParametrization scaled;
  scaled.alpha = [a = alpha, rho](double r) { return a.alpha(rho * r); };
  scaled.dalpha = [a = alpha, rho](double r) { return rho * a.dalpha(rho * r); };
  scaled.ddalpha = [a = alpha, rho](double r) { return rho * rho * a.ddalpha(rho * r); };
  return {out, scaled};
}

}  // namespace cracktip
