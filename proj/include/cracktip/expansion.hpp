#pragma once

#include <cstddef>
#include <vector>

#include "cracktip/grid.hpp"
#include "cracktip/log_polar.hpp"
#include "cracktip/ventsel.hpp"

namespace cracktip {

struct ModeCoefficients {
  double a0 = 0.0;
  double a1 = 0.0;
  std::vector<double> a;  // a[i] is the coefficient of mode k = i + 2
  double truncation_error = 0.0;  // discrete H1 norm of the unexpanded remainder

  std::size_t K() const { return a.size() + 1; }
  void validate() const;
};

// basis profiles and their derivatives cached on one grid
struct SpectralBasis {
  Grid1D grid;
  std::size_t K = 0;
  std::vector<VentselMode> modes;           // k = 1..K
  std::vector<std::vector<double>> zeta;    // zeta[k], k = 0..K
  std::vector<std::vector<double>> dzeta;   // first derivatives
  double zeta0_norm_sq = 0.0;               // quadrature value of <zeta0, zeta0>

  static SpectralBasis build(std::size_t K, const Grid1D& grid = default_basis_grid());
  const std::vector<double>& profile(std::size_t k) const { return zeta.at(k); }
};

ModeCoefficients expand(const SampledFunction1D& zeta, std::size_t K);
ModeCoefficients expand(const SampledFunction1D& zeta, const SpectralBasis& basis);

SampledFunction1D reconstruct(const ModeCoefficients& c, const Grid1D& grid);
SampledFunction1D reconstruct(const ModeCoefficients& c, const SpectralBasis& basis);

std::pair<CylinderField, CylinderField> parity_split(const CylinderField& h);  // (even, odd)

// per-time-slice expansion of a cylinder field
struct CoefficientTrajectory {
  Grid1D t;
  std::vector<double> a0;
  std::vector<double> a1;
  std::vector<std::vector<double>> a;  // a[i] is the t-series of mode k = i + 2

  std::size_t K() const { return a.size() + 1; }
};

CoefficientTrajectory expand_trajectory(const CylinderField& v, const SpectralBasis& basis);
CoefficientTrajectory expand_trajectory_serial(const CylinderField& v, const SpectralBasis& basis);

}  // namespace cracktip
