#include "cracktip/ventsel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cracktip/fd.hpp"
#include "cracktip/quadrature.hpp"
#include "cracktip/roots.hpp"

namespace cracktip {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kBisectionTol = 1e-13;
}  // namespace

double psi(double x) {
  return 8.0 * x * std::cos(x) - (kPi * kPi - 4.0 * x * x) * std::sin(x);
}

double psi_prime(double x) {
  return 8.0 * std::cos(x) - 8.0 * x * std::sin(x) + 8.0 * x * std::sin(x) -
         (kPi * kPi - 4.0 * x * x) * std::cos(x);
}

double phi_positive(double x) {
  return std::exp(x) * (kPi * kPi + x * x - 4.0 * x) - kPi * kPi - x * x - 4.0 * x;
}

double phi_positive_prime(double x) {
  return std::exp(x) * (kPi * kPi + x * x - 4.0 * x + 2.0 * x - 4.0) - 2.0 * x - 4.0;
}

Grid1D default_basis_grid() { return Grid1D::uniform(0.0, 2.0 * kPi, 2049); }

double normalization_closed_form(double nu) {
  const double s = std::sin(2.0 * kPi * nu);
  const double norm_sq = kPi * (nu * nu - 0.25) + s * (0.5 * nu + 1.0 / (8.0 * nu));
  return 1.0 / std::sqrt(norm_sq);
}

namespace {

RootBracket eigen_bracket(std::size_t k) {
  if (k == 2) return {1.5 * kPi, 2.0 * kPi};
  return {static_cast<double>(k - 1) * kPi, static_cast<double>(k) * kPi};
}

SampledFunction1D raw_profile(std::size_t k, double nu, const Grid1D& grid) {
  if (k == 0)
    return sample(grid, [](double p) { return (p - kPi) * std::sin(0.5 * p); }, Parity::odd);
  if (k == 1) return sample(grid, [](double p) { return std::cos(0.5 * p); }, Parity::odd);
  return sample(grid, [nu](double p) { return std::sin(nu * (p - kPi)); }, Parity::odd);
}

}  // namespace

VentselMode eigenvalue(std::size_t k, const Grid1D& grid) {
  if (k < 1) throw std::invalid_argument("eigenvalue: need k >= 1");
  VentselMode mode;
  mode.k = k;
  if (k == 1) {
    mode.nu = 0.5;
    mode.mu = 0.0;
    mode.c = 1.0;
    mode.bracket_lo = mode.bracket_hi = 0.5 * kPi;
    mode.psi_residual = std::abs(psi(0.5 * kPi));
    mode.profile = raw_profile(1, mode.nu, grid);
    return mode;
  }
  const RootBracket br = eigen_bracket(k);
  const double x = find_root(psi, br, kBisectionTol);
  mode.nu = x / kPi;
  mode.mu = mode.nu - 0.5;
  mode.bracket_lo = br.a / kPi;
  mode.bracket_hi = br.b / kPi;
  mode.psi_residual = std::abs(psi(x));
  auto prof = raw_profile(k, mode.nu, grid);
  const double norm_sq = bilinear(prof, prof);
  if (!(norm_sq > 0.0)) throw std::runtime_error("eigenvalue: nonpositive profile norm");
  mode.c = 1.0 / std::sqrt(norm_sq);
  for (double& v : prof.values) v *= mode.c;
  mode.profile = std::move(prof);
  return mode;
}

std::vector<VentselMode> spectrum(std::size_t K, const Grid1D& grid) {
  std::vector<VentselMode> modes(K);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(K); ++i)
    modes[static_cast<std::size_t>(i)] = eigenvalue(static_cast<std::size_t>(i) + 1, grid);
  return modes;
}

std::vector<VentselMode> spectrum_serial(std::size_t K, const Grid1D& grid) {
  std::vector<VentselMode> modes;
  modes.reserve(K);
  for (std::size_t k = 1; k <= K; ++k) modes.push_back(eigenvalue(k, grid));
  return modes;
}

SampledFunction1D basis_function(std::size_t k, const Grid1D& grid) {
  if (k <= 1) return raw_profile(k, 0.5, grid);
  return eigenvalue(k, grid).profile;
}

double bilinear(const SampledFunction1D& u, const SampledFunction1D& v) {
  if (!u.grid.same_as(v.grid)) throw std::invalid_argument("bilinear: grid mismatch");
  const double h = u.grid.spacing();
  const auto du = differentiate_values(u.values, h, 1);
  const auto dv = differentiate_values(v.values, h, 1);
  std::vector<double> integrand(u.values.size());
  for (std::size_t i = 0; i < integrand.size(); ++i)
    integrand[i] = du[i] * dv[i] - 0.25 * u.values[i] * v.values[i];
  return integrate_values(integrand, h);
}

SampledFunction1D resolvent(const SampledFunction1D& g) {
  g.validate();
  if (g.parity != Parity::odd || parity_defect(g, Parity::odd) > kParityTol)
    throw std::invalid_argument("resolvent: input must be odd about phi = pi");
  const double h = g.grid.spacing();
  const std::size_t mid = g.grid.midpoint_index();

  // G(phi) = double integral of g from pi, via two cumulative passes
  auto c1 = cumulative_values(g.values, h);
  const double c1_mid = c1[mid];
  for (double& v : c1) v -= c1_mid;
  auto G = cumulative_values(c1, h);
  const double G_mid = G[mid];
  for (double& v : G) v -= G_mid;

  const double Gp0 = c1[0];
  const double G0 = G[0];
  const double Gpp0 = g.values[0];
  const double slope = (Gp0 + 0.5 * kPi * (0.25 * G0 + Gpp0)) / (kPi * kPi / 8.0 - 1.0);

  SampledFunction1D h_out;
  h_out.grid = g.grid;
  h_out.parity = Parity::odd;
  h_out.values.resize(g.values.size());
  for (std::size_t i = 0; i < h_out.values.size(); ++i)
    h_out.values[i] = slope * (g.grid.nodes[i] - kPi) + G[i];
  return h_out;
}

double sobolev_norm_sq(const SampledFunction1D& u, int order) {
  if (order < 0) throw std::invalid_argument("sobolev_norm_sq: order >= 0");
  const double h = u.grid.spacing();
  std::vector<double> cur = u.values;
  std::vector<double> integrand(cur.size(), 0.0);
  for (int m = 0;; ++m) {
    for (std::size_t i = 0; i < cur.size(); ++i) integrand[i] += cur[i] * cur[i];
    if (m == order) break;
    cur = differentiate_values(cur, h, 1);
  }
  return integrate_values(integrand, h);
}

}  // namespace cracktip
