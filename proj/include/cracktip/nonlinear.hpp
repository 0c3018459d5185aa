#pragma once

#include <cstddef>
#include <vector>

#include "cracktip/linearized.hpp"
#include "cracktip/log_polar.hpp"

namespace cracktip {

struct NonlinearState {
  CylinderField f;
  TimeFunction theta;

  void validate(double boundary_tol = 1e-8) const;
};

struct SisResidual {
  CylinderField pde;
  std::vector<double> bc;            // per t, larger endpoint trace
  std::vector<double> transmission;  // per t
  double pde_max = 0.0;
  double bc_max = 0.0;
  double transmission_max = 0.0;
};

SisResidual sis_residual(const NonlinearState& state);

// signed curvature of the crack at depth t, in the original radial variable
double curvature(const TimeFunction& theta, double t);
double curvature_profile(const CrackParametrization& crack, double r);

// independent check: finite differences on the planar curve e^{-t}(cos, sin)(theta)
double parametric_curvature_fd(const TimeFunction& theta, double t, double h = 1e-4);

struct ConsistencyRow {
  double delta = 0.0;
  double pde = 0.0;
  double bc = 0.0;
  double transmission = 0.0;
};

struct ConsistencyTable {
  std::vector<ConsistencyRow> rows;
  double p_pde = 0.0;
  double p_bc = 0.0;
  double p_transmission = 0.0;
  bool bc_at_floor = false;  // Dirichlet residual stays at roundoff level
  double floor_level = 0.0;
};

// embeds (v, lambda) into the nonlinear system at amplitudes delta and fits the
// order of the leftover residual; quadratic order certifies the linearization
ConsistencyTable linearization_consistency(const LinearizedTrajectory& traj,
                                           const std::vector<double>& deltas);

}  // namespace cracktip
