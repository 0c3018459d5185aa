#pragma once

#include <cstddef>
#include <string>

#include "cracktip/linearized.hpp"

namespace cracktip {

struct AnnulusEnergies {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
  double sigma = 0.0;
  double s = 0.0;
  double c0 = 0.0;
  bool analytic_path = false;  // exact coefficient derivatives vs finite differences
  double error_estimate = 0.0;
};

AnnulusEnergies energies(const LinearizedTrajectory& traj, double sigma, double s, double c0,
                         std::size_t K = 64);

enum class AnnuliVerdict { hypothesis_false, implication_holds, violation, precondition_violated };
enum class EnergyKind { E, G };

std::string to_string(AnnuliVerdict v);

struct ThreeAnnuliReport {
  AnnuliVerdict verdict = AnnuliVerdict::hypothesis_false;
  AnnulusEnergies first, middle, last;
  EnergyKind which = EnergyKind::E;
  double eta = 0.0;
  double c0 = 0.0;
  // integral-condition precondition, recorded for the G form
  double extra_condition_max = 0.0;
  bool extra_condition_ok = true;
};

ThreeAnnuliReport three_annuli_check(const LinearizedTrajectory& traj, double base, double eta,
                                     double c0, EnergyKind which, std::size_t K = 64);

struct ConvexityReport {
  double min_margin = 0.0;  // min over t of h''(t) - c_hat h(t)
  double argmin_t = 0.0;
  double c_hat = 0.0;
};

ConvexityReport convexity_check(const LinearizedTrajectory& traj, double t_lo, double t_hi,
                                double c_hat, std::size_t K = 64);

// 2 mu_2^2, from the slowest admissible nontrivial mode
double default_c_hat();

inline constexpr double kDefaultEta = 0.05;
inline constexpr double kDefaultC0 = 0.01;

}  // namespace cracktip
