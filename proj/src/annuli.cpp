#include "cracktip/annuli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

#include "cracktip/expansion.hpp"
#include "cracktip/fd.hpp"
#include "cracktip/quadrature.hpp"
#include "cracktip/ventsel.hpp"

namespace cracktip {

namespace {

constexpr std::size_t kAnalyticQuadNodes = 801;

struct ExpMode {
  double nu;
  double C;
  double D;

  double deriv(double t, int m) const {
    const double am = 0.5 - nu, ap = 0.5 + nu;
    double cm = C, cp = D;
    for (int i = 0; i < m; ++i) {
      cm *= am;
      cp *= ap;
    }
    return cm * std::exp(am * t) + cp * std::exp(ap * t);
  }
};

// merge duplicate k entries so each angular mode has a single amplitude pair
std::vector<ExpMode> merged_modes(const AnalyticModeData& a) {
  std::map<std::size_t, ExpMode> by_k;
  for (const auto& m : a.modes) {
    auto [it, inserted] = by_k.try_emplace(m.k, ExpMode{m.nu, m.C, m.D});
    if (!inserted) {
      it->second.C += m.C;
      it->second.D += m.D;
    } else if (it->second.nu == 0.0) {
      it->second.nu = eigenvalue(m.k).nu;
    }
  }
  std::vector<ExpMode> out;
  for (auto& [k, m] : by_k) {
    if (m.nu == 0.0) m.nu = eigenvalue(k).nu;
    out.push_back(m);
  }
  return out;
}

TimeFunction slow_lambda_part(const AnalyticModeData& a) {
  return slow_mode(a.slow_c1, a.slow_c2, a.slow_d, CylinderGrid::standard(9, 9, 0.0, 1.0)).lambda;
}

double energy_integrand_E(const std::vector<ExpMode>& modes, double t) {
  double acc = 0.0;
  for (const auto& m : modes) {
    const double a = m.deriv(t, 0);
    const double add = m.deriv(t, 2);
    acc += m.nu * m.nu * m.nu * m.nu * a * a + add * add;
  }
  return acc;
}

double simpson_of(const std::function<double(double)>& f, double a, double b, std::size_t m) {
  Grid1D g = Grid1D::uniform(a, b, m);
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = f(g.nodes[i]);
  return integrate_values(y, g.spacing());
}

// integral of a grid-sampled integrand over an arbitrary subinterval, via a
// high-order antiderivative and cubic interpolation at the endpoints
double lagrange_interp(const Grid1D& g, const std::vector<double>& y, double x) {
  const double h = g.spacing();
  const double s = (x - g.lo) / h;
  auto i0 = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
  i0 = std::clamp(i0, static_cast<std::ptrdiff_t>(0), static_cast<std::ptrdiff_t>(g.n) - 4);
  double acc = 0.0;
  for (std::ptrdiff_t j = 0; j < 4; ++j) {
    double lj = 1.0;
    for (std::ptrdiff_t m = 0; m < 4; ++m) {
      if (m == j) continue;
      lj *= (s - static_cast<double>(i0 + m)) / static_cast<double>(j - m);
    }
    acc += lj * y[static_cast<std::size_t>(i0 + j)];
  }
  return acc;
}

double integral_over(const Grid1D& g, const std::vector<double>& y, double a, double b,
                     double* estimate) {
  auto A = cumulative_values(y, g.spacing());
  const double fine = lagrange_interp(g, A, b) - lagrange_interp(g, A, a);
  if (estimate != nullptr) {
    if (g.n >= 9 && g.n % 2 == 1) {
      Grid1D g2 = Grid1D::uniform(g.lo, g.hi, (g.n + 1) / 2);
      std::vector<double> y2(g2.n);
      for (std::size_t i = 0; i < g2.n; ++i) y2[i] = y[2 * i];
      auto A2 = cumulative_values(y2, g2.spacing());
      const double coarse = lagrange_interp(g2, A2, b) - lagrange_interp(g2, A2, a);
      *estimate = std::abs(fine - coarse) / 15.0;
    } else {
      *estimate = 0.0;
    }
  }
  return fine;
}

struct SampledCoefficients {
  Grid1D t;
  std::vector<double> E_series;  // sum over k >= 2 of nu^4 a^2 + a''^2
  std::vector<double> F_series;
  std::vector<double> E_tail;  // same sum over modes too coarse for the phi grid
};

// modes need ~20 phi nodes per period before the nu^4 weight stops amplifying
// projection noise; coarser ones go into the error estimate, not the value
std::size_t trusted_modes(std::size_t K, std::size_t nphi) {
  return std::max<std::size_t>(2, std::min(K, (nphi - 1) / 20));
}

SampledCoefficients sampled_series(const LinearizedTrajectory& traj, std::size_t K) {
  const auto& g = traj.v.grid();
  SampledCoefficients out;
  out.t = g.t;
  const SpectralBasis basis = SpectralBasis::build(K, g.phi);
  const CoefficientTrajectory coeff = expand_trajectory(traj.zeta(), basis);
  const double ht = g.t.spacing();
  const std::size_t k_trust = trusted_modes(K, g.phi.n);
  out.E_series.assign(g.t.n, 0.0);
  out.E_tail.assign(g.t.n, 0.0);
  for (std::size_t k = 2; k <= basis.K; ++k) {
    const double nu = basis.modes[k - 1].nu;
    const auto& a = coeff.a[k - 2];
    const auto add = differentiate_values(a, ht, 2);
    auto& dst = k <= k_trust ? out.E_series : out.E_tail;
    for (std::size_t it = 0; it < g.t.n; ++it)
      dst[it] += nu * nu * nu * nu * a[it] * a[it] + add[it] * add[it];
  }
  const auto a0dd = differentiate_values(coeff.a0, ht, 2);
  const auto a1dd = differentiate_values(coeff.a1, ht, 2);
  out.F_series.resize(g.t.n);
  for (std::size_t it = 0; it < g.t.n; ++it) {
    const double tt = g.t.nodes[it];
    const double l1 = traj.lambda.d1(tt);
    const double l2 = traj.lambda.d2(tt);
    out.F_series[it] = l1 * l1 + l2 * l2 + coeff.a0[it] * coeff.a0[it] +
                       coeff.a1[it] * coeff.a1[it] + a0dd[it] * a0dd[it] + a1dd[it] * a1dd[it];
  }
  return out;
}

}  // namespace

AnnulusEnergies energies(const LinearizedTrajectory& traj, double sigma, double s, double c0,
                         std::size_t K) {
  const auto& g = traj.v.grid();
  if (!(sigma < s) || sigma < g.t.lo - 1e-9 || s > g.t.hi + 1e-9)
    throw std::invalid_argument("energies: interval outside trajectory range");
  AnnulusEnergies out;
  out.sigma = sigma;
  out.s = s;
  out.c0 = c0;

  if (traj.analytic.present) {
    out.analytic_path = true;
    const auto modes = merged_modes(traj.analytic);
    const TimeFunction lam_slow = slow_lambda_part(traj.analytic);
    const double c1 = traj.analytic.slow_c1, c2 = traj.analytic.slow_c2;
    const double abar1 = traj.analytic.abar1;
    const double sqrt2pi = std::sqrt(2.0 * std::numbers::pi);

    auto fE = [&modes](double t) { return energy_integrand_E(modes, t); };
    auto fF = [&](double t) {
      const double l1 = traj.lambda.d1(t);
      const double l2 = traj.lambda.d2(t);
      const double a0 = c1 + c2 * std::exp(t);
      const double a0dd = c2 * std::exp(t);
      const double a1 = abar1 - lam_slow(t) / sqrt2pi;
      const double a1dd = -lam_slow.d2(t) / sqrt2pi;
      return l1 * l1 + l2 * l2 + a0 * a0 + a1 * a1 + a0dd * a0dd + a1dd * a1dd;
    };
    const double E_f = simpson_of(fE, sigma, s, kAnalyticQuadNodes);
    const double E_c = simpson_of(fE, sigma, s, (kAnalyticQuadNodes + 1) / 2);
    const double F_f = simpson_of(fF, sigma, s, kAnalyticQuadNodes);
    const double F_c = simpson_of(fF, sigma, s, (kAnalyticQuadNodes + 1) / 2);
    out.E = E_f;
    out.F = F_f;
    out.error_estimate = (std::abs(E_f - E_c) + std::abs(F_f - F_c)) / 15.0;
  } else {
    const SampledCoefficients sc = sampled_series(traj, K);
    double eE = 0.0, eF = 0.0;
    out.E = integral_over(sc.t, sc.E_series, sigma, s, &eE);
    out.F = integral_over(sc.t, sc.F_series, sigma, s, &eF);
    const double tail = integral_over(sc.t, sc.E_tail, sigma, s, nullptr);
    out.error_estimate = eE + eF + std::abs(tail);
  }
  out.E = std::max(0.0, out.E);
  out.F = std::max(0.0, out.F);
  out.G = std::max(out.E, c0 * out.F);
  return out;
}

std::string to_string(AnnuliVerdict v) {
  switch (v) {
    case AnnuliVerdict::hypothesis_false: return "hypothesis_false";
    case AnnuliVerdict::implication_holds: return "implication_holds";
    case AnnuliVerdict::violation: return "VIOLATION";
    case AnnuliVerdict::precondition_violated: return "precondition_violated";
  }
  return "unknown";
}

ThreeAnnuliReport three_annuli_check(const LinearizedTrajectory& traj, double base, double eta,
                                     double c0, EnergyKind which, std::size_t K) {
  const auto& g = traj.v.grid();
  if (base < g.t.lo - 1e-9 || base + 3.0 > g.t.hi + 1e-9)
    throw std::invalid_argument("three_annuli_check: need trajectory on [base, base+3]");
  ThreeAnnuliReport rep;
  rep.which = which;
  rep.eta = eta;
  rep.c0 = c0;
  rep.first = energies(traj, base, base + 1.0, c0, K);
  rep.middle = energies(traj, base + 1.0, base + 2.0, c0, K);
  rep.last = energies(traj, base + 2.0, base + 3.0, c0, K);

  auto pick = [which](const AnnulusEnergies& e) { return which == EnergyKind::E ? e.E : e.G; };
  const double first = pick(rep.first);
  const double middle = pick(rep.middle);
  const double last = pick(rep.last);
  const double scale = std::max({first, middle, last});

  if (which == EnergyKind::G) {
    for (double sig : {base + 1.25, base + 1.5, base + 1.75})
      rep.extra_condition_max =
          std::max(rep.extra_condition_max, std::abs(extra_condition(traj, sig)));
    rep.extra_condition_ok = rep.extra_condition_max <= 1e-6 * (1.0 + std::sqrt(scale));
  }

  const double zero_tol = 1e-14 * scale;
  if (scale <= 0.0 || (first <= zero_tol && middle <= zero_tol)) {
    rep.verdict = AnnuliVerdict::hypothesis_false;
  } else if (middle < (1.0 - eta) * first) {
    rep.verdict = AnnuliVerdict::hypothesis_false;
  } else if (last >= (1.0 + eta) * middle) {
    rep.verdict = AnnuliVerdict::implication_holds;
  } else if (which == EnergyKind::G && !rep.extra_condition_ok) {
    rep.verdict = AnnuliVerdict::precondition_violated;
  } else {
    rep.verdict = AnnuliVerdict::violation;
  }
  return rep;
}

ConvexityReport convexity_check(const LinearizedTrajectory& traj, double t_lo, double t_hi,
                                double c_hat, std::size_t K) {
  const auto& g = traj.v.grid();
  if (!(t_lo < t_hi) || t_lo < g.t.lo - 1e-9 || t_hi > g.t.hi + 1e-9)
    throw std::invalid_argument("convexity_check: range outside trajectory");
  ConvexityReport rep;
  rep.c_hat = c_hat;
  rep.min_margin = 0.0;
  rep.argmin_t = t_lo;

  if (traj.analytic.present) {
    const auto modes = merged_modes(traj.analytic);
    if (modes.empty()) return rep;
    Grid1D tq = Grid1D::uniform(t_lo, t_hi, kAnalyticQuadNodes);
    bool set = false;
    for (std::size_t i = 0; i < tq.n; ++i) {
      const double t = tq.nodes[i];
      double h = 0.0, hdd = 0.0;
      for (const auto& m : modes) {
        const double a = m.deriv(t, 0), a1 = m.deriv(t, 1), a2 = m.deriv(t, 2),
                     a3 = m.deriv(t, 3), a4 = m.deriv(t, 4);
        const double nu4 = m.nu * m.nu * m.nu * m.nu;
        h += nu4 * a * a + a2 * a2;
        hdd += nu4 * (2.0 * a1 * a1 + 2.0 * a * a2) + 2.0 * a3 * a3 + 2.0 * a2 * a4;
      }
      const double margin = hdd - c_hat * h;
      if (!set || margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.argmin_t = t;
        set = true;
      }
    }
  } else {
    const SampledCoefficients sc = sampled_series(traj, K);
    const auto hdd = differentiate_values(sc.E_series, sc.t.spacing(), 2);
    bool set = false;
    for (std::size_t it = 0; it < sc.t.n; ++it) {
      const double t = sc.t.nodes[it];
      if (t < t_lo - 1e-12 || t > t_hi + 1e-12) continue;
      const double margin = hdd[it] - c_hat * sc.E_series[it];
      if (!set || margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.argmin_t = t;
        set = true;
      }
    }
  }
  return rep;
}

double default_c_hat() {
  static const double mu2 = eigenvalue(2).mu;
  return 2.0 * mu2 * mu2;
}

}  // namespace cracktip
