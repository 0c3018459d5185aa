#include "cracktip/identities.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "cracktip/quadrature.hpp"

namespace cracktip {

namespace {
constexpr double kPi = std::numbers::pi;
}

double VectorField2D::conformal_defect(double x, double y) const {
  const auto J = jacobian(x, y);
  return std::max(std::abs(J[0] - J[3]), std::abs(J[1] + J[2]));
}

VectorField2D identity_field() {
  VectorField2D f;
  f.name = "identity";
  f.eta = [](double x, double y) { return std::array<double, 2>{x, y}; };
  f.jacobian = [](double, double) { return std::array<double, 4>{1.0, 0.0, 0.0, 1.0}; };
  f.conformal_flag = true;
  return f;
}

VectorField2D constant_field(double vx, double vy) {
  VectorField2D f;
  f.name = "constant";
  f.eta = [vx, vy](double, double) { return std::array<double, 2>{vx, vy}; };
  f.jacobian = [](double, double) { return std::array<double, 4>{0.0, 0.0, 0.0, 0.0}; };
  f.conformal_flag = true;
  return f;
}

VectorField2D rotation_field() {
  VectorField2D f;
  f.name = "rotation";
  f.eta = [](double x, double y) { return std::array<double, 2>{-y, x}; };
  f.jacobian = [](double, double) { return std::array<double, 4>{0.0, -1.0, 1.0, 0.0}; };
  f.conformal_flag = true;
  return f;
}

VectorField2D z_squared_field() {
  return conformal_polynomial({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
}

VectorField2D axis_field() {
  VectorField2D f;
  f.name = "axis";
  f.eta = [](double x, double) { return std::array<double, 2>{x, 0.0}; };
  f.jacobian = [](double, double) { return std::array<double, 4>{1.0, 0.0, 0.0, 0.0}; };
  f.conformal_flag = false;
  return f;
}

VectorField2D conformal_polynomial(const std::vector<std::pair<double, double>>& coeffs) {
  VectorField2D f;
  f.name = "conformal_polynomial";
  f.conformal_flag = true;
  f.eta = [coeffs](double x, double y) {
    const std::complex<double> z(x, y);
    std::complex<double> w(0.0, 0.0), zp(1.0, 0.0);
    for (const auto& [a, b] : coeffs) {
      w += std::complex<double>(a, b) * zp;
      zp *= z;
    }
    return std::array<double, 2>{w.real(), w.imag()};
  };
  f.jacobian = [coeffs](double x, double y) {
    const std::complex<double> z(x, y);
    std::complex<double> dw(0.0, 0.0), zp(1.0, 0.0);
    for (std::size_t m = 1; m < coeffs.size(); ++m) {
      dw += static_cast<double>(m) * std::complex<double>(coeffs[m].first, coeffs[m].second) * zp;
      zp *= z;
    }
    // holomorphic: d1/dx = Re w', d1/dy = -Im w', d2/dx = Im w', d2/dy = Re w'
    return std::array<double, 4>{dw.real(), -dw.imag(), dw.imag(), dw.real()};
  };
  return f;
}

VectorField2D polynomial_field(const std::vector<std::vector<std::vector<double>>>& coeffs,
                               std::string name) {
  if (coeffs.size() != 2) throw std::invalid_argument("polynomial_field: need two components");
  VectorField2D f;
  f.name = std::move(name);
  f.conformal_flag = false;
  auto eval = [](const std::vector<std::vector<double>>& c, double x, double y) {
    double acc = 0.0, xi = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      double yj = 1.0;
      for (std::size_t j = 0; j < c[i].size(); ++j) {
        acc += c[i][j] * xi * yj;
        yj *= y;
      }
      xi *= x;
    }
    return acc;
  };
  auto eval_dx = [](const std::vector<std::vector<double>>& c, double x, double y) {
    double acc = 0.0, xi = 1.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
      double yj = 1.0;
      for (std::size_t j = 0; j < c[i].size(); ++j) {
        acc += static_cast<double>(i) * c[i][j] * xi * yj;
        yj *= y;
      }
      xi *= x;
    }
    return acc;
  };
  auto eval_dy = [](const std::vector<std::vector<double>>& c, double x, double y) {
    double acc = 0.0, xi = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      double yj = 1.0;
      for (std::size_t j = 1; j < c[i].size(); ++j) {
        acc += static_cast<double>(j) * c[i][j] * xi * yj;
        yj *= y;
      }
      xi *= x;
    }
    return acc;
  };
  const auto c1 = coeffs[0], c2 = coeffs[1];
  f.eta = [c1, c2, eval](double x, double y) {
    return std::array<double, 2>{eval(c1, x, y), eval(c2, x, y)};
  };
  f.jacobian = [c1, c2, eval_dx, eval_dy](double x, double y) {
    return std::array<double, 4>{eval_dx(c1, x, y), eval_dy(c1, x, y), eval_dx(c2, x, y),
                                 eval_dy(c2, x, y)};
  };
  return f;
}

namespace {

// Cartesian gradient of a chart field at chart point (phi, s)
std::array<double, 2> cart_gradient(const PolarField& u, double phi, double s) {
  const auto [dr, dpr] = u.gradient(phi, s);
  const double c = std::cos(phi), sn = std::sin(phi);
  return {dr * c - dpr * sn, dr * sn + dpr * c};
}

double bulk_term(const PolarField& u, double r, const VectorField2D& eta, std::size_t ns,
                 std::size_t nphi) {
  return integrate_2d(
      [&](double s, double phi) {
        const double se = std::max(s, 1e-9 * r);
        const auto g = cart_gradient(u, phi, se);
        const double x = se * std::cos(phi), y = se * std::sin(phi);
        const auto J = eta.jacobian(x, y);
        const double g2 = g[0] * g[0] + g[1] * g[1];
        const double div = J[0] + J[3];
        const double quad =
            g[0] * (J[0] * g[0] + J[1] * g[1]) + g[1] * (J[2] * g[0] + J[3] * g[1]);
        return (g2 * div - 2.0 * quad) * s;
      },
      0.0, r, 0.0, 2.0 * kPi, ns, nphi);
}

struct CrackGeometry {
  std::array<double, 2> point;
  std::array<double, 2> unit_tangent;  // oriented away from the tip
  double speed;                        // |d point / ds|
};

CrackGeometry crack_at(const CrackParametrization& crack, double s) {
  const double a = crack.alpha(s);
  const double da = crack.dalpha(s);
  const double c = std::cos(a), sn = std::sin(a);
  CrackGeometry geo;
  geo.point = {s * c, s * sn};
  const double tx = c - s * da * sn;
  const double ty = sn + s * da * c;
  geo.speed = std::sqrt(tx * tx + ty * ty);
  geo.unit_tangent = {tx / geo.speed, ty / geo.speed};
  return geo;
}

double crack_term(const CrackParametrization& crack, double r, const VectorField2D& eta,
                  std::size_t m) {
  return integrate_function(
      [&](double s) {
        const auto geo = crack_at(crack, s);
        const auto J = eta.jacobian(geo.point[0], geo.point[1]);
        const auto& e = geo.unit_tangent;
        const double q = e[0] * (J[0] * e[0] + J[1] * e[1]) + e[1] * (J[2] * e[0] + J[3] * e[1]);
        return q * geo.speed;
      },
      0.0, r, m);
}

double boundary_term(const PolarField& u, double r, const VectorField2D& eta, std::size_t m) {
  return integrate_function(
      [&](double beta) {
        const auto g = cart_gradient(u, beta, r);
        const double c = std::cos(beta), sn = std::sin(beta);
        const auto h = eta.eta(r * c, r * sn);
        const double g2 = g[0] * g[0] + g[1] * g[1];
        const double eta_nu = h[0] * c + h[1] * sn;
        const double u_nu = g[0] * c + g[1] * sn;
        const double g_eta = g[0] * h[0] + g[1] * h[1];
        return (g2 * eta_nu - 2.0 * u_nu * g_eta) * r;
      },
      0.0, 2.0 * kPi, m);
}

double endpoint_term(const CrackParametrization& crack, double r, const VectorField2D& eta,
                     bool flip) {
  auto geo = crack_at(crack, r);
  double ex = geo.unit_tangent[0], ey = geo.unit_tangent[1];
  if (ex * geo.point[0] + ey * geo.point[1] < 0.0) {
    ex = -ex;
    ey = -ey;
  }
  if (flip) {
    ex = -ex;
    ey = -ey;
  }
  const auto h = eta.eta(geo.point[0], geo.point[1]);
  return ex * h[0] + ey * h[1];
}

std::size_t half_nodes(std::size_t n) { return (n + 1) / 2; }

}  // namespace

double crack_length_inside(const CrackParametrization& crack, double r, std::size_t m) {
  return integrate_function([&](double s) { return crack_at(crack, s).speed; }, 0.0, r, m);
}

IdentityReport boundary_variation_report(const PolarField& u, const CrackParametrization& crack,
                                         double r, const VectorField2D& eta,
                                         const IdentityOptions& opt) {
  if (!(r > 0.0)) throw std::invalid_argument("boundary_variation_report: need r > 0");
  if (!u.has_gradient())
    throw std::invalid_argument("boundary_variation_report: field needs an analytic gradient");

  IdentityReport rep;
  rep.identity = "boundary_variation";
  rep.eta_name = eta.name;
  rep.radius = r;
  rep.ns = opt.ns;
  rep.nphi = opt.nphi;
  rep.nboundary = opt.nboundary;
  rep.endpoint_flipped = opt.flip_endpoint_orientation;

  if (eta.conformal_flag) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
      const double beta = 2.0 * kPi * static_cast<double>(i) / 64.0;
      for (double frac : {0.25, 0.6, 1.0}) {
        const double x = frac * r * std::cos(beta), y = frac * r * std::sin(beta);
        worst = std::max(worst, eta.conformal_defect(x, y));
      }
    }
    rep.conformal_defect_max = worst;
    if (worst > 1e-10)
      throw std::invalid_argument("boundary_variation_report: declared conformal field fails "
                                  "the Cauchy-Riemann check");
  }

  rep.terms.bulk = bulk_term(u, r, eta, opt.ns, opt.nphi);
  rep.terms.crack = crack_term(crack, r, eta, opt.ncrack);
  rep.terms.boundary = boundary_term(u, r, eta, opt.nboundary);
  rep.terms.endpoint = endpoint_term(crack, r, eta, opt.flip_endpoint_orientation);

  rep.term_estimates.bulk =
      std::abs(rep.terms.bulk - bulk_term(u, r, eta, half_nodes(opt.ns), half_nodes(opt.nphi))) /
      15.0;
  rep.term_estimates.crack =
      std::abs(rep.terms.crack - crack_term(crack, r, eta, half_nodes(opt.ncrack))) / 15.0;
  rep.term_estimates.boundary =
      std::abs(rep.terms.boundary - boundary_term(u, r, eta, half_nodes(opt.nboundary))) / 15.0;
  rep.richardson_estimate =
      rep.term_estimates.bulk + rep.term_estimates.crack + rep.term_estimates.boundary;

  rep.crack_length = crack_length_inside(crack, r, opt.ncrack);
  rep.lhs = rep.terms.bulk + rep.terms.crack;
  rep.rhs = rep.terms.boundary + rep.terms.endpoint;
  rep.residual = rep.lhs - rep.rhs;
  return rep;
}

IdentityReport dlms(const PolarField& u, const CrackParametrization& crack, double r,
                    const IdentityOptions& opt) {
  IdentityReport rep = boundary_variation_report(u, crack, r, identity_field(), opt);
  rep.identity = "dlms";
  // circle-defect form: lhs is length/r, rhs the tangential excess plus endpoint
  const double length = rep.crack_length;
  rep.extra.emplace_back("general_lhs", rep.lhs);
  rep.extra.emplace_back("general_rhs", rep.rhs);
  rep.lhs = length / r;
  rep.rhs = (rep.terms.boundary + rep.terms.endpoint - rep.terms.bulk) / r;
  rep.residual = rep.lhs - rep.rhs;
  return rep;
}

IdentityReport am_identity(const PolarField& u, const CrackParametrization& crack, double r,
                           const IdentityOptions& opt) {
  if (!u.has_gradient())
    throw std::invalid_argument("am_identity: field needs an analytic gradient");
  IdentityReport rep;
  rep.identity = "am_singleton";
  rep.radius = r;
  rep.nboundary = opt.nboundary;

  const auto geo = crack_at(crack, r);
  const double beta_p = std::atan2(geo.point[1], geo.point[0]);
  const double taupx = -std::sin(beta_p), taupy = std::cos(beta_p);

  auto value_at = [&](std::size_t m) {
    return integrate_function(
        [&](double beta) {
          const auto g = cart_gradient(u, beta, r);
          const double c = std::cos(beta), sn = std::sin(beta);
          const double g2 = g[0] * g[0] + g[1] * g[1];
          const double nu_tau_p = c * taupx + sn * taupy;
          const double u_nu = g[0] * c + g[1] * sn;
          const double gdt = g[0] * (-sn - taupx) + g[1] * (c - taupy);
          return (g2 * nu_tau_p + 2.0 * u_nu * gdt) * r;
        },
        0.0, 2.0 * kPi, m);
  };
  rep.lhs = value_at(opt.nboundary);
  rep.rhs = 0.0;
  rep.residual = rep.lhs;
  rep.terms.boundary = rep.lhs;
  rep.term_estimates.boundary = std::abs(rep.lhs - value_at(half_nodes(opt.nboundary))) / 15.0;
  rep.richardson_estimate = rep.term_estimates.boundary;

  const IdentityReport polar = am_polar_conjugate(u, r, opt);
  rep.extra.emplace_back("polar_A", polar.lhs);
  rep.extra.emplace_back("polar_B", polar.rhs);
  rep.extra.emplace_back("polar_residual", polar.residual);
  return rep;
}

IdentityReport am_polar_conjugate(const PolarField& u, double r, const IdentityOptions& opt) {
  if (!u.has_gradient())
    throw std::invalid_argument("am_polar_conjugate: field needs an analytic gradient");
  IdentityReport rep;
  rep.identity = "am_polar_conjugate";
  rep.radius = r;
  rep.nboundary = opt.nboundary;

  auto AB_at = [&](std::size_t m) {
    const double A = integrate_function(
        [&](double phi) {
          const auto [dr, dpr] = u.gradient(phi, r);
          const double wr = dr, wp = r * dpr;
          return (r * wr * wr - wp * wp / r) * std::sin(phi) * r;
        },
        0.0, 2.0 * kPi, m);
    const double B = 2.0 * integrate_function(
                               [&](double phi) {
                                 const auto [dr, dpr] = u.gradient(phi, r);
                                 return dr * (r * dpr) * (1.0 + std::cos(phi));
                               },
                               0.0, 2.0 * kPi, m);
    return std::pair<double, double>{A, B};
  };
  const auto [A, B] = AB_at(opt.nboundary);
  const auto [A2, B2] = AB_at(half_nodes(opt.nboundary));
  rep.lhs = A;
  rep.rhs = B;
  rep.residual = A - B;
  rep.richardson_estimate = (std::abs(A - A2) + std::abs(B - B2)) / 15.0;
  return rep;
}

}  // namespace cracktip
