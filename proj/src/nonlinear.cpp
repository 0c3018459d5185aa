#include "cracktip/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cracktip/fd.hpp"

namespace cracktip {

namespace {
constexpr double kPi = std::numbers::pi;

double vec_max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}
}  // namespace

void NonlinearState::validate(double boundary_tol) const {
  f.grid().validate();
  const double scale = std::max(1.0, f.max_abs());
  const std::size_t nphi = f.grid().phi.n;
  for (std::size_t it = 0; it < f.grid().t.n; ++it) {
    if (std::abs(f.at(0, it)) > boundary_tol * scale ||
        std::abs(f.at(nphi - 1, it)) > boundary_tol * scale)
      throw std::runtime_error("NonlinearState: Dirichlet trace violated");
  }
}

SisResidual sis_residual(const NonlinearState& state) {
  const auto& g = state.f.grid();
  const auto ft = diff_t(state.f, 1);
  const auto ftt = diff_t(state.f, 2);
  const auto fp = diff_phi(state.f, 1);
  const auto fpp = diff_phi(state.f, 2);
  const auto ftp = diff_t(fp, 1);

  SisResidual out;
  out.pde = CylinderField(g);
  out.bc.resize(g.t.n);
  out.transmission.resize(g.t.n);
  const double hphi = g.phi.spacing();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jt = 0; jt < static_cast<std::ptrdiff_t>(g.t.n); ++jt) {
    const auto it = static_cast<std::size_t>(jt);
    const double t = g.t.nodes[it];
    const double td = state.theta.d1(t);
    const double tdd = state.theta.d2(t);
    for (std::size_t ip = 0; ip < g.phi.n; ++ip) {
      const double correction = td * fp.at(ip, it) + td * td * fpp.at(ip, it) -
                                2.0 * td * ftp.at(ip, it) - tdd * fp.at(ip, it);
      out.pde.at(ip, it) = ft.at(ip, it) - 0.25 * state.f.at(ip, it) - fpp.at(ip, it) -
                           ftt.at(ip, it) - correction;
    }
    out.bc[it] = std::max(std::abs(state.f.at(0, it)), std::abs(state.f.at(g.phi.n - 1, it)));
    std::vector<double> row(g.phi.n);
    for (std::size_t ip = 0; ip < g.phi.n; ++ip) row[ip] = state.f.at(ip, it);
    const double fp0 = boundary_derivative(row, hphi, 1, 0);
    const double fp1 = boundary_derivative(row, hphi, 1, 1);
    const double lhs = (tdd - td - td * td * td) / std::pow(1.0 + td * td, 2.5);
    out.transmission[it] = lhs - (fp1 * fp1 - fp0 * fp0);
  }
  out.pde_max = out.pde.max_abs();
  out.bc_max = vec_max_abs(out.bc);
  out.transmission_max = vec_max_abs(out.transmission);
  return out;
}

double curvature(const TimeFunction& theta, double t) {
  const double td = theta.d1(t);
  const double tdd = theta.d2(t);
  return std::exp(t) * (td + td * td * td - tdd) / std::pow(1.0 + td * td, 1.5);
}

double curvature_profile(const CrackParametrization& crack, double r) {
  if (!(r > 0.0)) throw std::domain_error("curvature_profile: need r > 0");
  return curvature(theta_from_alpha(crack), -std::log(r));
}

double parametric_curvature_fd(const TimeFunction& theta, double t, double h) {
  double x[5], y[5];
  for (int i = -2; i <= 2; ++i) {
    const double s = t + i * h;
    const double rho = std::exp(-s);
    x[i + 2] = rho * std::cos(theta(s));
    y[i + 2] = rho * std::sin(theta(s));
  }
  const double xd = (x[0] - 8.0 * x[1] + 8.0 * x[3] - x[4]) / (12.0 * h);
  const double yd = (y[0] - 8.0 * y[1] + 8.0 * y[3] - y[4]) / (12.0 * h);
  const double xdd = (-x[0] + 16.0 * x[1] - 30.0 * x[2] + 16.0 * x[3] - x[4]) / (12.0 * h * h);
  const double ydd = (-y[0] + 16.0 * y[1] - 30.0 * y[2] + 16.0 * y[3] - y[4]) / (12.0 * h * h);
  return (xd * ydd - yd * xdd) / std::pow(xd * xd + yd * yd, 1.5);
}

namespace {

double fit_order(const std::vector<double>& deltas, const std::vector<double>& res) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto n = static_cast<double>(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double x = std::log(deltas[i]);
    const double y = std::log(res[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ConsistencyTable linearization_consistency(const LinearizedTrajectory& traj,
                                           const std::vector<double>& deltas) {
  if (deltas.size() < 2)
    throw std::invalid_argument("linearization_consistency: need at least two deltas");
  for (double d : deltas)
    if (!(d > 0.0) || d > 0.1)
      throw std::invalid_argument("linearization_consistency: deltas must lie in (0, 0.1]");

  const auto& g = traj.v.grid();
  CylinderField base = CylinderField::sample(
      g, [](double phi, double) { return std::sqrt(2.0 / kPi) * std::sin(0.5 * phi); });

  ConsistencyTable table;
  std::vector<double> rp, rb, rt;
  for (double d : deltas) {
    NonlinearState state;
    state.f = base;
    for (std::size_t i = 0; i < state.f.data().size(); ++i)
      state.f.data()[i] += d * traj.v.data()[i];
    state.theta = d * traj.lambda;
    const SisResidual res = sis_residual(state);
    table.rows.push_back({d, res.pde_max, res.bc_max, res.transmission_max});
    rp.push_back(res.pde_max);
    rb.push_back(res.bc_max);
    rt.push_back(res.transmission_max);
  }

  table.floor_level = vec_max_abs(rb);
  table.bc_at_floor = table.floor_level <= 1e-12;
  auto safe_fit = [&](const std::vector<double>& r) {
    for (double x : r)
      if (!(x > 1e-300)) return std::numeric_limits<double>::quiet_NaN();
    return fit_order(deltas, r);
  };
  table.p_pde = safe_fit(rp);
  table.p_bc = safe_fit(rb);
  table.p_transmission = safe_fit(rt);
  return table;
}

}  // namespace cracktip
