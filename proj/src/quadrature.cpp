#include "cracktip/quadrature.hpp"

#include <stdexcept>

namespace cracktip {

double integrate_values(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  if (n < 8) throw std::invalid_argument("integrate: need at least 8 samples");
  if (n % 2 == 1) {
    double s_odd = 0.0, s_even = 0.0;
    for (std::size_t i = 1; i + 1 < n; i += 2) s_odd += y[i];
    for (std::size_t i = 2; i + 1 < n; i += 2) s_even += y[i];
    return h / 3.0 * (y[0] + y[n - 1] + 4.0 * s_odd + 2.0 * s_even);
  }
  const std::size_t m = n - 3;  // simpson over first n-4 intervals (even count), 3/8 tail
  double s_odd = 0.0, s_even = 0.0;
  for (std::size_t i = 1; i + 1 < m; i += 2) s_odd += y[i];
  for (std::size_t i = 2; i + 1 < m; i += 2) s_even += y[i];
  const double head = h / 3.0 * (y[0] + y[m - 1] + 4.0 * s_odd + 2.0 * s_even);
  const double tail = 3.0 * h / 8.0 * (y[n - 4] + 3.0 * y[n - 3] + 3.0 * y[n - 2] + y[n - 1]);
  return head + tail;
}

double integrate(const SampledFunction1D& f) {
  if (f.values.size() != f.grid.n)
    throw std::invalid_argument("integrate: sample/grid size mismatch");
  return integrate_values(f.values, f.grid.spacing());
}

std::vector<double> cumulative_values(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  if (n < 8) throw std::invalid_argument("cumulative_integral: need at least 8 samples");
  std::vector<double> F(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double inc;
    if (i == 0)
      inc = h / 24.0 * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]);
    else if (i == n - 2)
      inc = h / 24.0 * (y[n - 4] - 5.0 * y[n - 3] + 19.0 * y[n - 2] + 9.0 * y[n - 1]);
    else
      inc = h / 24.0 * (-y[i - 1] + 13.0 * y[i] + 13.0 * y[i + 1] - y[i + 2]);
    F[i + 1] = F[i] + inc;
  }
  return F;
}

SampledFunction1D cumulative_integral(const SampledFunction1D& f) {
  SampledFunction1D out;
  out.grid = f.grid;
  out.values = cumulative_values(f.values, f.grid.spacing());
  out.parity = Parity::none;
  return out;
}

double integrate_function(const std::function<double(double)>& fn, double a, double b,
                          std::size_t m) {
  if (m < 8) throw std::invalid_argument("integrate_function: need at least 8 nodes");
  const double h = (b - a) / static_cast<double>(m - 1);
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = fn(a + h * static_cast<double>(i));
  return integrate_values(y, h);
}

double integrate_2d(const std::function<double(double, double)>& line, double s0, double s1,
                    double phi0, double phi1, std::size_t ns, std::size_t nphi) {
  if (ns < 8 || nphi < 8) throw std::invalid_argument("integrate_2d: grid too small");
  const double hs = (s1 - s0) / static_cast<double>(ns - 1);
  const double hp = (phi1 - phi0) / static_cast<double>(nphi - 1);
  std::vector<double> line_vals(ns);
#pragma omp parallel for schedule(static)
  for (long long is = 0; is < static_cast<long long>(ns); ++is) {
    const double s = s0 + hs * static_cast<double>(is);
    std::vector<double> row(nphi);
    for (std::size_t ip = 0; ip < nphi; ++ip)
      row[ip] = line(s, phi0 + hp * static_cast<double>(ip));
    line_vals[static_cast<std::size_t>(is)] = integrate_values(row, hp);
  }
  return integrate_values(line_vals, hs);
}

double integrate_2d_serial(const std::function<double(double, double)>& line, double s0, double s1,
                           double phi0, double phi1, std::size_t ns, std::size_t nphi) {
  if (ns < 8 || nphi < 8) throw std::invalid_argument("integrate_2d: grid too small");
  const double hs = (s1 - s0) / static_cast<double>(ns - 1);
  const double hp = (phi1 - phi0) / static_cast<double>(nphi - 1);
  std::vector<double> line_vals(ns);
  std::vector<double> row(nphi);
  for (std::size_t is = 0; is < ns; ++is) {
    const double s = s0 + hs * static_cast<double>(is);
    for (std::size_t ip = 0; ip < nphi; ++ip)
      row[ip] = line(s, phi0 + hp * static_cast<double>(ip));
    line_vals[is] = integrate_values(row, hp);
  }
  return integrate_values(line_vals, hs);
}

}  // namespace cracktip
