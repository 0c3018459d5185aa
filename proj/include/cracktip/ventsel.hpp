#pragma once

#include <cstddef>
#include <vector>

#include "cracktip/grid.hpp"

namespace cracktip {

// characteristic function whose positive zeros x = pi*nu give the eigenvalues
double psi(double x);
double psi_prime(double x);

// increasing on x > 0; positivity certifies that no growing boundary modes exist
double phi_positive(double x);
double phi_positive_prime(double x);

struct VentselMode {
  std::size_t k = 0;
  double nu = 0.0;
  double mu = 0.0;  // nu - 1/2
  double c = 1.0;   // profile normalization, quadrature value for k >= 2
  SampledFunction1D profile;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double psi_residual = 0.0;
};

Grid1D default_basis_grid();

// k = 1 is the exact half-integer mode; k >= 2 bisects psi on the k-th bracket
VentselMode eigenvalue(std::size_t k, const Grid1D& grid = default_basis_grid());

std::vector<VentselMode> spectrum(std::size_t K, const Grid1D& grid = default_basis_grid());
std::vector<VentselMode> spectrum_serial(std::size_t K, const Grid1D& grid = default_basis_grid());

// closed-form norm of sin(nu(phi-pi)) under the indefinite form, for cross-checks
double normalization_closed_form(double nu);

// k=0: (phi-pi)sin(phi/2); k=1: cos(phi/2); k>=2: c_k sin(nu_k(phi-pi))
SampledFunction1D basis_function(std::size_t k, const Grid1D& grid = default_basis_grid());

struct BilinearFormContext {
  Grid1D grid;
};

// integral of u' v' minus a quarter of the integral of u v
double bilinear(const SampledFunction1D& u, const SampledFunction1D& v);

// explicit double-integral solve of the boundary-coupled second-order problem
SampledFunction1D resolvent(const SampledFunction1D& g);

// discrete Sobolev norms built from the module's own finite differences
double sobolev_norm_sq(const SampledFunction1D& u, int order);

}  // namespace cracktip
