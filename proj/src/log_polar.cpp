#include "cracktip/log_polar.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "cracktip/fd.hpp"

namespace cracktip {

TimeFunction TimeFunction::analytic(std::function<double(double)> f, std::function<double(double)> d1,
                                    std::function<double(double)> d2) {
  TimeFunction out;
  out.value_ = std::move(f);
  out.d1_ = std::move(d1);
  out.d2_ = std::move(d2);
  out.analytic_ = true;
  return out;
}

TimeFunction TimeFunction::constant(double c) {
  return analytic([c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; });
}

namespace {

// shared sampled-representation payload for TimeFunction closures
struct SampledCurve {
  Grid1D grid;
  std::vector<double> y, dy, ddy;

  double eval(const std::vector<double>& v, double t) const {
    // cubic Lagrange on the 4 nearest nodes
    const double h = grid.spacing();
    double s = (t - grid.lo) / h;
    auto n = static_cast<std::ptrdiff_t>(grid.n);
    auto i0 = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
    i0 = std::clamp(i0, static_cast<std::ptrdiff_t>(0), n - 4);
    double acc = 0.0;
    for (std::ptrdiff_t j = 0; j < 4; ++j) {
      double lj = 1.0;
      for (std::ptrdiff_t m = 0; m < 4; ++m) {
        if (m == j) continue;
        lj *= (s - static_cast<double>(i0 + m)) / static_cast<double>(j - m);
      }
      acc += lj * v[static_cast<std::size_t>(i0 + j)];
    }
    return acc;
  }
};

}  // namespace

TimeFunction TimeFunction::sampled(const Grid1D& tgrid, std::vector<double> values) {
  tgrid.validate();
  if (values.size() != tgrid.n) throw std::invalid_argument("TimeFunction::sampled: size mismatch");
  auto curve = std::make_shared<SampledCurve>();
  curve->grid = tgrid;
  curve->y = std::move(values);
  const double h = tgrid.spacing();
  curve->dy = differentiate_values(curve->y, h, 1);
  curve->ddy = differentiate_values(curve->y, h, 2);

  TimeFunction out;
  out.value_ = [curve](double t) { return curve->eval(curve->y, t); };
  out.d1_ = [curve](double t) { return curve->eval(curve->dy, t); };
  out.d2_ = [curve](double t) { return curve->eval(curve->ddy, t); };
  out.analytic_ = false;
  return out;
}

TimeFunction operator*(double s, const TimeFunction& f) {
  TimeFunction out;
  auto v = f.value_, d1 = f.d1_, d2 = f.d2_;
  out.value_ = [s, v](double t) { return s * v(t); };
  out.d1_ = [s, d1](double t) { return s * d1(t); };
  out.d2_ = [s, d2](double t) { return s * d2(t); };
  out.analytic_ = f.analytic_;
  return out;
}

TimeFunction operator+(const TimeFunction& a, const TimeFunction& b) {
  TimeFunction out;
  auto av = a.value_, bv = b.value_;
  auto a1 = a.d1_, b1 = b.d1_;
  auto a2 = a.d2_, b2 = b.d2_;
  out.value_ = [av, bv](double t) { return av(t) + bv(t); };
  out.d1_ = [a1, b1](double t) { return a1(t) + b1(t); };
  out.d2_ = [a2, b2](double t) { return a2(t) + b2(t); };
  out.analytic_ = a.analytic_ && b.analytic_;
  return out;
}

CylinderGrid CylinderGrid::standard(std::size_t nphi, std::size_t nt, double t0, double t1) {
  return {Grid1D::uniform(0.0, 2.0 * std::numbers::pi, nphi), Grid1D::uniform(t0, t1, nt)};
}

void CylinderGrid::validate() const {
  phi.validate();
  t.validate();
  if (std::abs(phi.lo) > 1e-12 || std::abs(phi.hi - 2.0 * std::numbers::pi) > 1e-12)
    throw std::invalid_argument("CylinderGrid: phi range must be [0, 2pi]");
}

bool CylinderGrid::same_as(const CylinderGrid& other) const {
  return phi.same_as(other.phi) && t.same_as(other.t);
}

CylinderField CylinderField::sample(const CylinderGrid& g,
                                    const std::function<double(double, double)>& f) {
  g.validate();
  CylinderField out(g);
  const auto nphi = g.phi.n;
  const auto nt = g.t.n;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t it = 0; it < static_cast<std::ptrdiff_t>(nt); ++it) {
    const double t = g.t.nodes[static_cast<std::size_t>(it)];
    for (std::size_t ip = 0; ip < nphi; ++ip)
      out.at(ip, static_cast<std::size_t>(it)) = f(g.phi.nodes[ip], t);
  }
  return out;
}

SampledFunction1D CylinderField::phi_section(std::size_t it, Parity parity) const {
  if (it >= grid_.t.n) throw std::out_of_range("phi_section: t index");
  SampledFunction1D out;
  out.grid = grid_.phi;
  out.parity = parity;
  out.values.assign(data_.begin() + static_cast<std::ptrdiff_t>(it * grid_.phi.n),
                    data_.begin() + static_cast<std::ptrdiff_t>((it + 1) * grid_.phi.n));
  return out;
}

std::vector<double> CylinderField::t_trace(std::size_t ip) const {
  if (ip >= grid_.phi.n) throw std::out_of_range("t_trace: phi index");
  std::vector<double> out(grid_.t.n);
  for (std::size_t it = 0; it < grid_.t.n; ++it) out[it] = at(ip, it);
  return out;
}

double CylinderField::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double CylinderField::interpolate(double phi, double t) const {
  const auto& gp = grid_.phi;
  const auto& gt = grid_.t;
  const double hp = gp.spacing();
  const double ht = gt.spacing();
  const double sp = (phi - gp.lo) / hp;
  const double st = (t - gt.lo) / ht;
  if (sp < -1e-9 || sp > static_cast<double>(gp.n - 1) + 1e-9 || st < -1e-9 ||
      st > static_cast<double>(gt.n - 1) + 1e-9)
    throw std::domain_error("CylinderField::interpolate: point outside grid");

  auto base = [](double s, std::size_t n) {
    auto i0 = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
    return std::clamp(i0, static_cast<std::ptrdiff_t>(0), static_cast<std::ptrdiff_t>(n) - 4);
  };
  const auto ip0 = base(sp, gp.n);
  const auto it0 = base(st, gt.n);

  auto weights = [](double s, std::ptrdiff_t i0, double w[4]) {
    for (std::ptrdiff_t j = 0; j < 4; ++j) {
      double lj = 1.0;
      for (std::ptrdiff_t m = 0; m < 4; ++m) {
        if (m == j) continue;
        lj *= (s - static_cast<double>(i0 + m)) / static_cast<double>(j - m);
      }
      w[j] = lj;
    }
  };
  double wp[4], wt[4];
  weights(sp, ip0, wp);
  weights(st, it0, wt);

  double acc = 0.0;
  for (std::ptrdiff_t jt = 0; jt < 4; ++jt) {
    double row = 0.0;
    for (std::ptrdiff_t jp = 0; jp < 4; ++jp)
      row += wp[jp] * at(static_cast<std::size_t>(ip0 + jp), static_cast<std::size_t>(it0 + jt));
    acc += wt[jt] * row;
  }
  return acc;
}

namespace {

template <bool Parallel>
CylinderField diff_phi_impl(const CylinderField& f, int order) {
  const auto& g = f.grid();
  CylinderField out(g);
  const double h = g.phi.spacing();
  const auto nt = static_cast<std::ptrdiff_t>(g.t.n);
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t it = 0; it < nt; ++it) {
    std::vector<double> row(g.phi.n);
    for (std::size_t ip = 0; ip < g.phi.n; ++ip) row[ip] = f.at(ip, static_cast<std::size_t>(it));
    auto d = differentiate_values(row, h, order);
    for (std::size_t ip = 0; ip < g.phi.n; ++ip) out.at(ip, static_cast<std::size_t>(it)) = d[ip];
  }
  return out;
}

template <bool Parallel>
CylinderField diff_t_impl(const CylinderField& f, int order) {
  const auto& g = f.grid();
  CylinderField out(g);
  const double h = g.t.spacing();
  const auto nphi = static_cast<std::ptrdiff_t>(g.phi.n);
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t ip = 0; ip < nphi; ++ip) {
    std::vector<double> col(g.t.n);
    for (std::size_t it = 0; it < g.t.n; ++it) col[it] = f.at(static_cast<std::size_t>(ip), it);
    auto d = differentiate_values(col, h, order);
    for (std::size_t it = 0; it < g.t.n; ++it) out.at(static_cast<std::size_t>(ip), it) = d[it];
  }
  return out;
}

}  // namespace

CylinderField diff_phi(const CylinderField& f, int order) { return diff_phi_impl<true>(f, order); }
CylinderField diff_t(const CylinderField& f, int order) { return diff_t_impl<true>(f, order); }
CylinderField diff_phi_serial(const CylinderField& f, int order) {
  return diff_phi_impl<false>(f, order);
}
CylinderField diff_t_serial(const CylinderField& f, int order) {
  return diff_t_impl<false>(f, order);
}

void LogPolarState::validate(double boundary_tol) const {
  f.grid().validate();
  const double scale = std::max(1.0, f.max_abs());
  for (std::size_t it = 0; it < f.grid().t.n; ++it) {
    if (std::abs(f.at(0, it)) > boundary_tol * scale ||
        std::abs(f.at(f.grid().phi.n - 1, it)) > boundary_tol * scale)
      throw std::runtime_error("LogPolarState: Dirichlet trace violated");
  }
}

TimeFunction theta_from_alpha(const CrackParametrization& alpha) {
  auto a = alpha.alpha;
  auto da = alpha.dalpha;
  auto dda = alpha.ddalpha;
  return TimeFunction::analytic(
      [a](double t) { return a(std::exp(-t)); },
      // d/dt alpha(e^{-t}) = -r alpha'(r) at r = e^{-t}
      [da](double t) {
        const double r = std::exp(-t);
        return -r * da(r);
      },
      [da, dda](double t) {
        const double r = std::exp(-t);
        return r * da(r) + r * r * dda(r);
      });
}

CrackParametrization alpha_from_theta(const TimeFunction& theta) {
  CrackParametrization out;
  out.alpha = [theta](double r) { return theta(-std::log(r)); };
  out.dalpha = [theta](double r) { return -theta.d1(-std::log(r)) / r; };
  out.ddalpha = [theta](double r) {
    const double t = -std::log(r);
    return (theta.d2(t) + theta.d1(t)) / (r * r);
  };
  return out;
}

LogPolarState to_log_polar(const PolarField& w, const CrackParametrization& alpha,
                           const CylinderGrid& cylinder) {
  cylinder.validate();
  LogPolarState out;
  out.theta = theta_from_alpha(alpha);
  const TimeFunction& th = out.theta;
  out.f = CylinderField::sample(cylinder, [&w, &th](double phi, double t) {
    const double r = std::exp(-t);
    return std::exp(0.5 * t) * w.value(phi + th(t), r);
  });
  return out;
}

PolarField from_log_polar(const LogPolarState& state) {
  auto shared = std::make_shared<LogPolarState>(state);
  PolarField out;
  out.value = [shared](double phi, double r) {
    if (!(r > 0.0)) throw std::domain_error("from_log_polar: need r > 0");
    const double t = -std::log(r);
    return std::sqrt(r) * shared->f.interpolate(phi - shared->theta(t), t);
  };
  return out;
}

}  // namespace cracktip
