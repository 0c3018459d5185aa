#pragma once

#include <functional>
#include <vector>

#include "cracktip/fields.hpp"
#include "cracktip/grid.hpp"

namespace cracktip {

// scalar function of t carrying its first two derivatives, either analytic
// closures or FD derivatives of a sampled array
class TimeFunction {
 public:
  TimeFunction() = default;

  static TimeFunction analytic(std::function<double(double)> f, std::function<double(double)> d1,
                               std::function<double(double)> d2);
  static TimeFunction constant(double c);
  static TimeFunction zero() { return constant(0.0); }
  static TimeFunction sampled(const Grid1D& tgrid, std::vector<double> values);

  double operator()(double t) const { return value_(t); }
  double d1(double t) const { return d1_(t); }
  double d2(double t) const { return d2_(t); }
  bool analytic_derivatives() const { return analytic_; }

  friend TimeFunction operator+(const TimeFunction& a, const TimeFunction& b);
  friend TimeFunction operator*(double s, const TimeFunction& f);

 private:
  std::function<double(double)> value_ = [](double) { return 0.0; };
  std::function<double(double)> d1_ = [](double) { return 0.0; };
  std::function<double(double)> d2_ = [](double) { return 0.0; };
  bool analytic_ = true;
};

struct CylinderGrid {
  Grid1D phi;  // [0, 2pi]
  Grid1D t;

  static CylinderGrid standard(std::size_t nphi = 513, std::size_t nt = 401, double t0 = 0.0,
                               double t1 = 4.0);
  void validate() const;
  bool same_as(const CylinderGrid& other) const;
};

// scalar field sampled on a cylinder grid, phi contiguous per t-row
class CylinderField {
 public:
  CylinderField() = default;
  explicit CylinderField(const CylinderGrid& g) : grid_(g), data_(g.phi.n * g.t.n, 0.0) {}

  static CylinderField sample(const CylinderGrid& g,
                              const std::function<double(double, double)>& f);  // f(phi, t)

  const CylinderGrid& grid() const { return grid_; }
  double& at(std::size_t ip, std::size_t it) { return data_[it * grid_.phi.n + ip]; }
  double at(std::size_t ip, std::size_t it) const { return data_[it * grid_.phi.n + ip]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  SampledFunction1D phi_section(std::size_t it, Parity parity = Parity::none) const;
  std::vector<double> t_trace(std::size_t ip) const;

  double max_abs() const;
  // cubic (4-point) interpolation in both directions
  double interpolate(double phi, double t) const;

 private:
  CylinderGrid grid_;
  std::vector<double> data_;
};

// elementwise derivative fields; OpenMP across the other axis, serial twins for testing
CylinderField diff_phi(const CylinderField& f, int order);
CylinderField diff_t(const CylinderField& f, int order);
CylinderField diff_phi_serial(const CylinderField& f, int order);
CylinderField diff_t_serial(const CylinderField& f, int order);

struct LogPolarState {
  TimeFunction theta;
  CylinderField f;

  // Dirichlet trace of the conjugate field: f(0,t) = f(2pi,t) = 0
  void validate(double boundary_tol = 1e-10) const;
};

// theta(t) = alpha(e^{-t}) with chain-rule derivatives
TimeFunction theta_from_alpha(const CrackParametrization& alpha);
// alpha(r) = theta(-ln r), alpha'(r) = -theta'(-ln r)/r, alpha''(r) = (theta''+theta')(-ln r)/r^2
CrackParametrization alpha_from_theta(const TimeFunction& theta);

// f(phi,t) = e^{t/2} w(phi + theta(t), e^{-t})
LogPolarState to_log_polar(const PolarField& w, const CrackParametrization& alpha,
                           const CylinderGrid& cylinder);

// w(phi,r) = r^{1/2} f(phi - theta(-ln r), -ln r), interpolating on the cylinder
PolarField from_log_polar(const LogPolarState& state);

}  // namespace cracktip
