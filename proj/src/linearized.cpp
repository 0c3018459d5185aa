#include "cracktip/linearized.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cracktip/fd.hpp"
#include "cracktip/quadrature.hpp"
#include "cracktip/ventsel.hpp"

namespace cracktip {

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

double vec_max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}
}  // namespace

double CoefficientSolution::value(double t) const {
  return C * std::exp((0.5 - nu) * t) + D * std::exp((0.5 + nu) * t);
}

double CoefficientSolution::d1(double t) const {
  return C * (0.5 - nu) * std::exp((0.5 - nu) * t) + D * (0.5 + nu) * std::exp((0.5 + nu) * t);
}

double CoefficientSolution::d2(double t) const {
  const double am = 0.5 - nu, ap = 0.5 + nu;
  return C * am * am * std::exp(am * t) + D * ap * ap * std::exp(ap * t);
}

TimeFunction CoefficientSolution::as_time_function() const {
  CoefficientSolution s = *this;
  return TimeFunction::analytic([s](double t) { return s.value(t); },
                                [s](double t) { return s.d1(t); },
                                [s](double t) { return s.d2(t); });
}

CoefficientSolution coefficient_solution(std::size_t k, double C, double D) {
  if (k < 2) throw std::invalid_argument("coefficient_solution: need k >= 2");
  return {k, C, D, eigenvalue(k).nu};
}

CylinderField LinearizedTrajectory::zeta() const {
  const auto& g = v.grid();
  CylinderField out(g);
  for (std::size_t it = 0; it < g.t.n; ++it) {
    const double l = lambda(g.t.nodes[it]) / kSqrt2Pi;
    for (std::size_t ip = 0; ip < g.phi.n; ++ip)
      out.at(ip, it) = v.at(ip, it) - l * std::cos(0.5 * g.phi.nodes[ip]);
  }
  return out;
}

void LinearizedTrajectory::validate(double boundary_tol) const {
  v.grid().validate();
  const double scale = std::max(1.0, v.max_abs());
  const std::size_t nphi = v.grid().phi.n;
  for (std::size_t it = 0; it < v.grid().t.n; ++it) {
    if (std::abs(v.at(0, it)) > boundary_tol * scale ||
        std::abs(v.at(nphi - 1, it)) > boundary_tol * scale)
      throw std::runtime_error("LinearizedTrajectory: Dirichlet trace violated");
    for (std::size_t ip = 0; ip < nphi; ++ip) {
      if (std::abs(v.at(ip, it) + v.at(nphi - 1 - ip, it)) > 10.0 * boundary_tol * scale)
        throw std::runtime_error("LinearizedTrajectory: v is not odd");
    }
  }
}

PairResidual lineare_residual(const LinearizedTrajectory& traj) {
  const auto& g = traj.v.grid();
  const auto vt = diff_t(traj.v, 1);
  const auto vtt = diff_t(traj.v, 2);
  const auto vpp = diff_phi(traj.v, 2);
  PairResidual out;
  out.pde = CylinderField(g);
  out.bc.resize(g.t.n);
  out.ode.resize(g.t.n);
  const double hphi = g.phi.spacing();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jt = 0; jt < static_cast<std::ptrdiff_t>(g.t.n); ++jt) {
    const auto it = static_cast<std::size_t>(jt);
    const double t = g.t.nodes[it];
    const double forcing = (traj.lambda.d1(t) - traj.lambda.d2(t)) / kSqrt2Pi;
    for (std::size_t ip = 0; ip < g.phi.n; ++ip) {
      const double phi = g.phi.nodes[ip];
      out.pde.at(ip, it) = vt.at(ip, it) - vtt.at(ip, it) - 0.25 * traj.v.at(ip, it) -
                           vpp.at(ip, it) - forcing * std::cos(0.5 * phi);
    }
    out.bc[it] = std::max(std::abs(traj.v.at(0, it)), std::abs(traj.v.at(g.phi.n - 1, it)));
    std::vector<double> row(g.phi.n);
    for (std::size_t ip = 0; ip < g.phi.n; ++ip) row[ip] = traj.v.at(ip, it);
    const double vphi0 = boundary_derivative(row, hphi, 1, 0);
    out.ode[it] =
        traj.lambda.d1(t) - traj.lambda.d2(t) - 2.0 * std::sqrt(2.0 / kPi) * vphi0;
  }
  out.pde_max = out.pde.max_abs();
  out.bc_max = vec_max_abs(out.bc);
  out.ode_max = vec_max_abs(out.ode);
  return out;
}

ConjugatedResidual ventsel_residual(const LinearizedTrajectory& traj) {
  const auto& g = traj.v.grid();
  const CylinderField z = traj.zeta();
  const auto zt = diff_t(z, 1);
  const auto ztt = diff_t(z, 2);
  const auto zpp = diff_phi(z, 2);
  ConjugatedResidual out;
  out.pde = CylinderField(g);
  out.ventsel.resize(g.t.n);
  out.trace.resize(g.t.n);
  const double hphi = g.phi.spacing();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jt = 0; jt < static_cast<std::ptrdiff_t>(g.t.n); ++jt) {
    const auto it = static_cast<std::size_t>(jt);
    for (std::size_t ip = 0; ip < g.phi.n; ++ip)
      out.pde.at(ip, it) =
          ztt.at(ip, it) + zpp.at(ip, it) + 0.25 * z.at(ip, it) - zt.at(ip, it);
    std::vector<double> row(g.phi.n);
    for (std::size_t ip = 0; ip < g.phi.n; ++ip) row[ip] = z.at(ip, it);
    const double zp0 = boundary_derivative(row, hphi, 1, 0);
    const double zpp0 = boundary_derivative(row, hphi, 2, 0);
    out.ventsel[it] = zp0 + 0.5 * kPi * (0.25 * row[0] + zpp0);
    out.trace[it] = row[0] + traj.lambda(g.t.nodes[it]) / kSqrt2Pi;
  }
  out.pde_max = out.pde.max_abs();
  out.ventsel_max = vec_max_abs(out.ventsel);
  out.trace_max = vec_max_abs(out.trace);
  return out;
}

LinearizedTrajectory slow_mode(double c1, double c2, double d, const CylinderGrid& grid) {
  LinearizedTrajectory traj;
  traj.v = CylinderField::sample(grid, [c1, c2](double phi, double t) {
    return (c1 + c2 * std::exp(t)) * (phi - kPi) * std::sin(0.5 * phi);
  });
  // solves lambda' - lambda'' = -sqrt(2pi)(c1 + c2 e^t) with lambda(0) = 0;
  // reduces to -sqrt(2pi) t a0(t) + d(e^t - 1) when c2 = 0
  traj.lambda = TimeFunction::analytic(
      [c1, c2, d](double t) {
        const double e = std::exp(t);
        return kSqrt2Pi * (-c1 * t + c2 * (t * e - e + 1.0)) + d * (e - 1.0);
      },
      [c1, c2, d](double t) {
        const double e = std::exp(t);
        return kSqrt2Pi * (-c1 + c2 * t * e) + d * e;
      },
      [c2, d](double t) {
        const double e = std::exp(t);
        return kSqrt2Pi * c2 * (t + 1.0) * e + d * e;
      });
  traj.analytic.present = true;
  traj.analytic.slow_c1 = c1;
  traj.analytic.slow_c2 = c2;
  traj.analytic.slow_d = d;
  return traj;
}

double extra_condition(const LinearizedTrajectory& traj, double sigma) {
  const auto& g = traj.v.grid();
  if (sigma < g.t.lo - 1e-12 || sigma > g.t.hi + 1e-12)
    throw std::invalid_argument("extra_condition: sigma outside trajectory range");
  const auto vt = diff_t(traj.v, 1);
  const auto vp = diff_phi(traj.v, 1);
  std::vector<double> integrand(g.phi.n);
  for (std::size_t ip = 0; ip < g.phi.n; ++ip) {
    const double phi = g.phi.nodes[ip];
    const double vv = traj.v.interpolate(phi, sigma);
    const double vvt = vt.interpolate(phi, sigma);
    const double vvp = vp.interpolate(phi, sigma);
    integrand[ip] = (0.5 * vv - vvt) * (std::cos(1.5 * phi) + std::cos(0.5 * phi)) +
                    vvp * (std::sin(1.5 * phi) + std::sin(0.5 * phi));
  }
  return integrate_values(integrand, g.phi.spacing()) +
         std::sqrt(0.5 * kPi) * traj.lambda.d1(sigma);
}

LinearizedTrajectory synthesize_modes(std::vector<ModeAmplitude> modes, double abar1,
                                      const CylinderGrid& grid) {
  grid.validate();
  struct ModeSample {
    std::vector<double> profile;  // zeta_k - zeta_k(0) cos(phi/2)
    double z0;
    double nu;
    double C, D;
  };
  std::vector<ModeSample> ms;
  ms.reserve(modes.size());
  for (auto& m : modes) {
    if (m.k < 2) throw std::invalid_argument("synthesize_modes: need k >= 2");
    const VentselMode em = eigenvalue(m.k, grid.phi);
    if (m.nu == 0.0) m.nu = em.nu;
    ModeSample s;
    s.z0 = em.profile.values.front();
    s.nu = em.nu;
    s.C = m.C;
    s.D = m.D;
    s.profile.resize(grid.phi.n);
    for (std::size_t ip = 0; ip < grid.phi.n; ++ip)
      s.profile[ip] =
          em.profile.values[ip] - s.z0 * std::cos(0.5 * grid.phi.nodes[ip]);
    ms.push_back(std::move(s));
  }

  LinearizedTrajectory traj;
  traj.v = CylinderField(grid);
  for (std::size_t it = 0; it < grid.t.n; ++it) {
    const double t = grid.t.nodes[it];
    for (const auto& s : ms) {
      const double a = s.C * std::exp((0.5 - s.nu) * t) + s.D * std::exp((0.5 + s.nu) * t);
      for (std::size_t ip = 0; ip < grid.phi.n; ++ip)
        traj.v.at(ip, it) += a * s.profile[ip];
    }
  }

  std::vector<std::array<double, 4>> lam;  // (z0, nu, C, D) per mode
  for (const auto& s : ms) lam.push_back({s.z0, s.nu, s.C, s.D});
  traj.lambda = TimeFunction::analytic(
      [lam, abar1](double t) {
        double z = abar1;
        for (const auto& m : lam)
          z += m[0] * (m[2] * std::exp((0.5 - m[1]) * t) + m[3] * std::exp((0.5 + m[1]) * t));
        return -kSqrt2Pi * z;
      },
      [lam](double t) {
        double z = 0.0;
        for (const auto& m : lam)
          z += m[0] * (m[2] * (0.5 - m[1]) * std::exp((0.5 - m[1]) * t) +
                       m[3] * (0.5 + m[1]) * std::exp((0.5 + m[1]) * t));
        return -kSqrt2Pi * z;
      },
      [lam](double t) {
        double z = 0.0;
        for (const auto& m : lam) {
          const double am = 0.5 - m[1], ap = 0.5 + m[1];
          z += m[0] * (m[2] * am * am * std::exp(am * t) + m[3] * ap * ap * std::exp(ap * t));
        }
        return -kSqrt2Pi * z;
      });

  traj.analytic.present = true;
  traj.analytic.modes = std::move(modes);
  traj.analytic.abar1 = abar1;
  return traj;
}

LinearizedTrajectory synthesize_decaying(const std::vector<std::pair<std::size_t, double>>& coeffs,
                                         double lambda_inf, double t0, double t1, std::size_t nphi,
                                         std::size_t nt) {
  CylinderGrid grid = CylinderGrid::standard(nphi, nt, t0, t1);
  std::vector<ModeAmplitude> modes;
  for (const auto& [k, C] : coeffs) modes.push_back({k, C, 0.0, 0.0});
  return synthesize_modes(std::move(modes), -lambda_inf / kSqrt2Pi, grid);
}

LinearizedTrajectory combine(const LinearizedTrajectory& a, const LinearizedTrajectory& b) {
  if (!a.v.grid().same_as(b.v.grid())) throw std::invalid_argument("combine: grid mismatch");
  LinearizedTrajectory out;
  out.v = a.v;
  for (std::size_t i = 0; i < out.v.data().size(); ++i) out.v.data()[i] += b.v.data()[i];
  out.lambda = a.lambda + b.lambda;
  out.analytic.present = a.analytic.present && b.analytic.present;
  out.analytic.modes = a.analytic.modes;
  out.analytic.modes.insert(out.analytic.modes.end(), b.analytic.modes.begin(),
                            b.analytic.modes.end());
  out.analytic.abar1 = a.analytic.abar1 + b.analytic.abar1;
  out.analytic.slow_c1 = a.analytic.slow_c1 + b.analytic.slow_c1;
  out.analytic.slow_c2 = a.analytic.slow_c2 + b.analytic.slow_c2;
  out.analytic.slow_d = a.analytic.slow_d + b.analytic.slow_d;
  return out;
}

double decay_rate(const LinearizedTrajectory& traj, double w0, double w1) {
  const auto& g = traj.v.grid();
  if (w0 < g.t.lo - 1e-12 || w1 > g.t.hi + 1e-12 || w0 >= w1)
    throw std::invalid_argument("decay_rate: bad window");
  const double h = g.phi.spacing();
  std::vector<double> ts, logs;
  double qmax = 0.0;
  std::vector<double> row(g.phi.n), q2(g.phi.n);
  for (std::size_t it = 0; it < g.t.n; ++it) {
    const double t = g.t.nodes[it];
    if (t < w0 - 1e-12 || t > w1 + 1e-12) continue;
    for (std::size_t ip = 0; ip < g.phi.n; ++ip) row[ip] = traj.v.at(ip, it);
    const auto d1 = differentiate_values(row, h, 1);
    const auto d2 = differentiate_values(row, h, 2);
    for (std::size_t ip = 0; ip < g.phi.n; ++ip)
      q2[ip] = row[ip] * row[ip] + d1[ip] * d1[ip] + d2[ip] * d2[ip];
    const double q = std::sqrt(std::max(0.0, integrate_values(q2, h))) +
                     std::abs(traj.lambda.d1(t)) + std::abs(traj.lambda.d2(t));
    qmax = std::max(qmax, q);
    ts.push_back(t);
    logs.push_back(q);
  }
  if (ts.size() < 4 || qmax < 1e-140)
    throw std::runtime_error("decay_rate: trajectory numerically zero on window");
  for (double& q : logs) {
    if (q <= 0.0) throw std::runtime_error("decay_rate: trajectory numerically zero on window");
    q = std::log(q);
  }
  double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
  const auto n = static_cast<double>(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sl += logs[i];
    stt += ts[i] * ts[i];
    stl += ts[i] * logs[i];
  }
  return (n * stl - st * sl) / (n * stt - st * st);
}

}  // namespace cracktip
