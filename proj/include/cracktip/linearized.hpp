#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cracktip/log_polar.hpp"

namespace cracktip {

// amplitudes of one angular mode: C on the decaying branch e^{(1/2-nu)t},
// D on the growing branch e^{(1/2+nu)t}
struct ModeAmplitude {
  std::size_t k = 2;
  double C = 0.0;
  double D = 0.0;
  double nu = 0.0;  // filled in by the synthesizer when left at 0
};

struct CoefficientSolution {
  std::size_t k;
  double C;
  double D;
  double nu;

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  TimeFunction as_time_function() const;
};

CoefficientSolution coefficient_solution(std::size_t k, double C, double D);

// closed-form description kept alongside sampled data so later analysis can
// use exact derivatives instead of finite differences
struct AnalyticModeData {
  bool present = false;
  std::vector<ModeAmplitude> modes;
  double abar1 = 0.0;  // constant cos(phi/2) amplitude in the conjugated field
  double slow_c1 = 0.0;
  double slow_c2 = 0.0;
  double slow_d = 0.0;
};

struct LinearizedTrajectory {
  CylinderField v;
  TimeFunction lambda;
  AnalyticModeData analytic;

  CylinderField zeta() const;  // v - (lambda/sqrt(2pi)) cos(phi/2)
  void validate(double boundary_tol = 1e-8) const;
};

struct PairResidual {
  CylinderField pde;
  std::vector<double> bc;   // per t, larger of the two endpoint traces
  std::vector<double> ode;  // per t, third-equation residual
  double pde_max = 0.0;
  double bc_max = 0.0;
  double ode_max = 0.0;
};

struct ConjugatedResidual {
  CylinderField pde;
  std::vector<double> ventsel;  // per t, boundary-operator residual
  std::vector<double> trace;    // per t, zeta(0,t) + lambda(t)/sqrt(2pi)
  double pde_max = 0.0;
  double ventsel_max = 0.0;
  double trace_max = 0.0;
};

PairResidual lineare_residual(const LinearizedTrajectory& traj);
ConjugatedResidual ventsel_residual(const LinearizedTrajectory& traj);

LinearizedTrajectory slow_mode(double c1, double c2, double d,
                               const CylinderGrid& grid = CylinderGrid::standard());

double extra_condition(const LinearizedTrajectory& traj, double sigma);

LinearizedTrajectory synthesize_modes(std::vector<ModeAmplitude> modes, double abar1,
                                      const CylinderGrid& grid);

// decaying branch only: amplitudes (k, C_k), lambda(+inf) fixing the constant mode
LinearizedTrajectory synthesize_decaying(const std::vector<std::pair<std::size_t, double>>& coeffs,
                                         double lambda_inf, double t0, double t1,
                                         std::size_t nphi = 513, std::size_t nt = 401);

LinearizedTrajectory combine(const LinearizedTrajectory& a, const LinearizedTrajectory& b);

// least-squares slope of log(H2 norm of v + |lambda'| + |lambda''|) over [w0, w1]
double decay_rate(const LinearizedTrajectory& traj, double w0, double w1);

}  // namespace cracktip
