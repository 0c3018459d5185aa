#include "cracktip/fd.hpp"

#include <algorithm>
#include <stdexcept>

namespace cracktip {

std::vector<double> fd_weights(const std::vector<double>& xs, double x0, int m) {
  const std::size_t n = xs.size();
  if (n == 0 || m < 0 || static_cast<std::size_t>(m) >= n)
    throw std::invalid_argument("fd_weights: invalid stencil");
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = static_cast<int>(std::min<std::size_t>(i, m));
    double c2 = 1.0;
    double c5 = c4;
    c4 = xs[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

namespace {

// one-sided / offset stencil weights at unit spacing, computed once
const std::vector<double>& edge_weights(int order, int pos) {
  // order 1: 5 nodes, pos in {0,1}; order 2: 6 nodes, pos in {0,1,2}
  static const std::vector<double> d1_0 = fd_weights({0, 1, 2, 3, 4}, 0.0, 1);
  static const std::vector<double> d1_1 = fd_weights({0, 1, 2, 3, 4}, 1.0, 1);
  static const std::vector<double> d2_0 = fd_weights({0, 1, 2, 3, 4, 5}, 0.0, 2);
  static const std::vector<double> d2_1 = fd_weights({0, 1, 2, 3, 4, 5}, 1.0, 2);
  if (order == 1) return pos == 0 ? d1_0 : d1_1;
  return pos == 0 ? d2_0 : d2_1;
}

}  // namespace

std::vector<double> differentiate_values(const std::vector<double>& y, double h, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("differentiate: order must be 1 or 2");
  const std::size_t n = y.size();
  if (n < 8) throw std::invalid_argument("differentiate: need at least 8 samples");
  std::vector<double> out(n);
  const double inv_h = 1.0 / h;
  const double scale = (order == 1) ? inv_h : inv_h * inv_h;
  if (order == 1) {
    const double c = inv_h / 12.0;
    for (std::size_t i = 2; i + 2 < n; ++i)
      out[i] = c * (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]);
  } else {
    const double c = scale / 12.0;
    for (std::size_t i = 2; i + 2 < n; ++i)
      out[i] = c * (-y[i - 2] + 16.0 * y[i - 1] - 30.0 * y[i] + 16.0 * y[i + 1] - y[i + 2]);
  }
  const std::size_t w = (order == 1) ? 5 : 6;
  for (int pos = 0; pos < 2; ++pos) {
    const auto& wl = edge_weights(order, pos);
    double acc = 0.0, acc_r = 0.0;
    for (std::size_t j = 0; j < w; ++j) {
      acc += wl[j] * y[j];
      acc_r += wl[j] * y[n - 1 - j];  // mirrored stencil at the right edge
    }
    out[pos] = acc * scale;
    out[n - 1 - pos] = (order == 1 ? -acc_r : acc_r) * scale;
  }
  return out;
}

double boundary_derivative(const std::vector<double>& y, double h, int order, int side) {
  if (order != 1 && order != 2) throw std::invalid_argument("boundary_derivative: bad order");
  const std::size_t n = y.size();
  const std::size_t w = (order == 1) ? 5 : 6;
  if (n < w) throw std::invalid_argument("boundary_derivative: too few samples");
  const auto& wl = edge_weights(order, 0);
  double acc = 0.0;
  if (side == 0) {
    for (std::size_t j = 0; j < w; ++j) acc += wl[j] * y[j];
  } else {
    for (std::size_t j = 0; j < w; ++j) acc += wl[j] * y[n - 1 - j];
    if (order == 1) acc = -acc;
  }
  const double inv_h = 1.0 / h;
  return acc * (order == 1 ? inv_h : inv_h * inv_h);
}

SampledFunction1D differentiate(const SampledFunction1D& f, int order) {
  SampledFunction1D out;
  out.grid = f.grid;
  out.values = differentiate_values(f.values, f.grid.spacing(), order);
  if (f.parity == Parity::none || order == 2)
    out.parity = f.parity;
  else
    out.parity = (f.parity == Parity::odd) ? Parity::even : Parity::odd;
  return out;
}

}  // namespace cracktip
