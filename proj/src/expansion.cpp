#include "cracktip/expansion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cracktip/fd.hpp"
#include "cracktip/quadrature.hpp"

namespace cracktip {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ModeCoefficients::validate() const {
  if (a.empty()) throw std::invalid_argument("ModeCoefficients: need K >= 2");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(a0) || !finite(a1)) throw std::invalid_argument("ModeCoefficients: non-finite");
  for (double x : a)
    if (!finite(x)) throw std::invalid_argument("ModeCoefficients: non-finite");
}

SpectralBasis SpectralBasis::build(std::size_t K, const Grid1D& grid) {
  if (K < 2) throw std::invalid_argument("SpectralBasis: need K >= 2");
  SpectralBasis b;
  b.grid = grid;
  b.K = K;
  b.modes = spectrum(K, grid);
  b.zeta.resize(K + 1);
  b.dzeta.resize(K + 1);
  b.zeta[0] = basis_function(0, grid).values;
  for (std::size_t k = 1; k <= K; ++k) b.zeta[k] = b.modes[k - 1].profile.values;
  const double h = grid.spacing();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k <= static_cast<std::ptrdiff_t>(K); ++k)
    b.dzeta[static_cast<std::size_t>(k)] =
        differentiate_values(b.zeta[static_cast<std::size_t>(k)], h, 1);
  std::vector<double> q(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i)
    q[i] = b.dzeta[0][i] * b.dzeta[0][i] - 0.25 * b.zeta[0][i] * b.zeta[0][i];
  b.zeta0_norm_sq = integrate_values(q, h);
  return b;
}

namespace {

// <u, zeta_k> with u' precomputed
double form_against(const std::vector<double>& u, const std::vector<double>& du,
                    const SpectralBasis& b, std::size_t k, std::vector<double>& scratch) {
  const auto& z = b.zeta[k];
  const auto& dz = b.dzeta[k];
  for (std::size_t i = 0; i < u.size(); ++i)
    scratch[i] = du[i] * dz[i] - 0.25 * u[i] * z[i];
  return integrate_values(scratch, b.grid.spacing());
}

ModeCoefficients expand_values(const std::vector<double>& u, const SpectralBasis& b) {
  const double h = b.grid.spacing();
  const auto du = differentiate_values(u, h, 1);
  std::vector<double> scratch(u.size());

  ModeCoefficients c;
  c.a.resize(b.K - 1);
  c.a0 = form_against(u, du, b, 0, scratch) / b.zeta0_norm_sq;
  for (std::size_t k = 2; k <= b.K; ++k) c.a[k - 2] = form_against(u, du, b, k, scratch);

  // remainder after the indefinite-form projections is a multiple of cos(phi/2)
  std::vector<double> resid = u;
  for (std::size_t i = 0; i < resid.size(); ++i) {
    double bar = c.a0 * b.zeta[0][i];
    for (std::size_t k = 2; k <= b.K; ++k) bar += c.a[k - 2] * b.zeta[k][i];
    resid[i] -= bar;
    scratch[i] = resid[i] * b.zeta[1][i];
  }
  c.a1 = integrate_values(scratch, h) / kPi;

  for (std::size_t i = 0; i < resid.size(); ++i) resid[i] -= c.a1 * b.zeta[1][i];
  const auto dresid = differentiate_values(resid, h, 1);
  for (std::size_t i = 0; i < resid.size(); ++i)
    scratch[i] = resid[i] * resid[i] + dresid[i] * dresid[i];
  c.truncation_error = std::sqrt(std::max(0.0, integrate_values(scratch, h)));
  return c;
}

}  // namespace

ModeCoefficients expand(const SampledFunction1D& zeta, std::size_t K) {
  return expand(zeta, SpectralBasis::build(K, zeta.grid));
}

ModeCoefficients expand(const SampledFunction1D& zeta, const SpectralBasis& basis) {
  zeta.validate();
  if (!zeta.grid.same_as(basis.grid)) throw std::invalid_argument("expand: grid mismatch");
  if (zeta.parity != Parity::odd || parity_defect(zeta, Parity::odd) > kParityTol)
    throw std::invalid_argument("expand: input must be odd about phi = pi");
  return expand_values(zeta.values, basis);
}

SampledFunction1D reconstruct(const ModeCoefficients& c, const SpectralBasis& basis) {
  c.validate();
  if (c.K() > basis.K) throw std::invalid_argument("reconstruct: basis too small");
  SampledFunction1D out;
  out.grid = basis.grid;
  out.parity = Parity::odd;
  out.values.assign(basis.grid.n, 0.0);
  for (std::size_t i = 0; i < basis.grid.n; ++i) {
    double acc = c.a0 * basis.zeta[0][i] + c.a1 * basis.zeta[1][i];
    for (std::size_t k = 2; k <= c.K(); ++k) acc += c.a[k - 2] * basis.zeta[k][i];
    out.values[i] = acc;
  }
  return out;
}

SampledFunction1D reconstruct(const ModeCoefficients& c, const Grid1D& grid) {
  return reconstruct(c, SpectralBasis::build(c.K(), grid));
}

std::pair<CylinderField, CylinderField> parity_split(const CylinderField& h) {
  const auto& g = h.grid();
  g.validate();
  CylinderField even(g), odd(g);
  const std::size_t nphi = g.phi.n;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t it = 0; it < static_cast<std::ptrdiff_t>(g.t.n); ++it) {
    for (std::size_t ip = 0; ip < nphi; ++ip) {
      const double a = h.at(ip, static_cast<std::size_t>(it));
      const double bb = h.at(nphi - 1 - ip, static_cast<std::size_t>(it));
      even.at(ip, static_cast<std::size_t>(it)) = 0.5 * (a + bb);
      odd.at(ip, static_cast<std::size_t>(it)) = 0.5 * (a - bb);
    }
  }
  return {even, odd};
}

namespace {

template <bool Parallel>
CoefficientTrajectory expand_trajectory_impl(const CylinderField& v, const SpectralBasis& basis) {
  const auto& g = v.grid();
  if (!g.phi.same_as(basis.grid)) throw std::invalid_argument("expand_trajectory: grid mismatch");
  CoefficientTrajectory traj;
  traj.t = g.t;
  traj.a0.resize(g.t.n);
  traj.a1.resize(g.t.n);
  traj.a.assign(basis.K - 1, std::vector<double>(g.t.n));
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t it = 0; it < static_cast<std::ptrdiff_t>(g.t.n); ++it) {
    std::vector<double> slice(g.phi.n);
    for (std::size_t ip = 0; ip < g.phi.n; ++ip) slice[ip] = v.at(ip, static_cast<std::size_t>(it));
    auto c = expand_values(slice, basis);
    traj.a0[static_cast<std::size_t>(it)] = c.a0;
    traj.a1[static_cast<std::size_t>(it)] = c.a1;
    for (std::size_t k = 2; k <= basis.K; ++k)
      traj.a[k - 2][static_cast<std::size_t>(it)] = c.a[k - 2];
  }
  return traj;
}

}  // namespace

CoefficientTrajectory expand_trajectory(const CylinderField& v, const SpectralBasis& basis) {
  return expand_trajectory_impl<true>(v, basis);
}

CoefficientTrajectory expand_trajectory_serial(const CylinderField& v, const SpectralBasis& basis) {
  return expand_trajectory_impl<false>(v, basis);
}

}  // namespace cracktip
