// Compares the OpenMP kernels against their serial reference twins and reports
// timings plus the largest disagreement, which should be at round-off level.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cracktip/expansion.hpp"
#include "cracktip/linearized.hpp"
#include "cracktip/log_polar.hpp"
#include "cracktip/quadrature.hpp"
#include "cracktip/ventsel.hpp"

using namespace cracktip;
namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const double t0 = now_ms();
    f();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, double max_diff) {
  std::printf("%-24s serial %8.2f ms   parallel %8.2f ms   speedup %5.2fx   max|diff| %.3g\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms, max_diff);
}

double field_diff(const CylinderField& a, const CylinderField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  constexpr double pi = std::numbers::pi;

  // 2d quadrature over the slit disk
  {
    auto f = [](double s, double phi) { return std::sqrt(s) * std::sin(0.5 * phi) + s * s; };
    double par = 0.0, ser = 0.0;
    const double tp = time_best_of(3, [&] { par = integrate_2d(f, 0.0, 1.0, 0.0, 2.0 * pi, 513, 513); });
    const double ts = time_best_of(3, [&] { ser = integrate_2d_serial(f, 0.0, 1.0, 0.0, 2.0 * pi, 513, 513); });
    report("integrate_2d 513x513", ts, tp, std::abs(par - ser));
  }

  // eigenvalue sweep
  {
    const Grid1D grid = Grid1D::uniform(0.0, 2.0 * pi, 2049);
    std::vector<VentselMode> par, ser;
    const double tp = time_best_of(3, [&] { par = spectrum(64, grid); });
    const double ts = time_best_of(3, [&] { ser = spectrum_serial(64, grid); });
    double d = 0.0;
    for (std::size_t i = 0; i < par.size(); ++i) {
      d = std::max(d, std::abs(par[i].nu - ser[i].nu));
      d = std::max(d, std::abs(par[i].c - ser[i].c));
    }
    report("spectrum K=64", ts, tp, d);
  }

  // cylinder derivatives and per-slice expansion on a synthesized trajectory
  {
    const CylinderGrid grid = CylinderGrid::standard(513, 401);
    const LinearizedTrajectory traj =
        synthesize_modes({{2, 1.0, 0.0, 0.0}, {3, 0.5, 0.0, 0.0}, {5, 0.25, 0.0, 0.0}}, 0.0, grid);

    CylinderField dp_p, dp_s;
    const double tp1 = time_best_of(3, [&] { dp_p = diff_phi(traj.v, 2); });
    const double ts1 = time_best_of(3, [&] { dp_s = diff_phi_serial(traj.v, 2); });
    report("diff_phi order 2", ts1, tp1, field_diff(dp_p, dp_s));

    CylinderField dt_p, dt_s;
    const double tp2 = time_best_of(3, [&] { dt_p = diff_t(traj.v, 2); });
    const double ts2 = time_best_of(3, [&] { dt_s = diff_t_serial(traj.v, 2); });
    report("diff_t order 2", ts2, tp2, field_diff(dt_p, dt_s));

    const SpectralBasis basis = SpectralBasis::build(64, grid.phi);
    CoefficientTrajectory cp, cs;
    const double tp3 = time_best_of(3, [&] { cp = expand_trajectory(traj.v, basis); });
    const double ts3 = time_best_of(3, [&] { cs = expand_trajectory_serial(traj.v, basis); });
    double d = 0.0;
    for (std::size_t it = 0; it < cp.t.n; ++it) {
      d = std::max(d, std::abs(cp.a0[it] - cs.a0[it]));
      d = std::max(d, std::abs(cp.a1[it] - cs.a1[it]));
      for (std::size_t i = 0; i < cp.a.size(); ++i)
        d = std::max(d, std::abs(cp.a[i][it] - cs.a[i][it]));
    }
    report("expand_trajectory K=64", ts3, tp3, d);
  }
  return 0;
}
