#include "cracktip/grid.hpp"

#include <algorithm>
#include <string>

namespace cracktip {

Grid1D Grid1D::uniform(double lo, double hi, std::size_t n) {
  if (n < 8) throw std::invalid_argument("Grid1D: need at least 8 nodes, got " + std::to_string(n));
  if (!(lo < hi)) throw std::invalid_argument("Grid1D: lo must be < hi");
  Grid1D g;
  g.lo = lo;
  g.hi = hi;
  g.n = n;
  g.nodes.resize(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g.nodes[i] = lo + h * static_cast<double>(i);
  g.nodes[n - 1] = hi;
  return g;
}

bool Grid1D::same_as(const Grid1D& other, double tol) const {
  const double scale = std::max(std::abs(hi - lo), 1.0);
  return n == other.n && std::abs(lo - other.lo) <= tol * scale &&
         std::abs(hi - other.hi) <= tol * scale;
}

void Grid1D::validate() const {
  if (n < 8) throw std::invalid_argument("Grid1D: need at least 8 nodes");
  if (nodes.size() != n) throw std::invalid_argument("Grid1D: node array size mismatch");
  if (nodes.front() != lo || nodes.back() != hi)
    throw std::invalid_argument("Grid1D: endpoints do not match lo/hi");
  const double h = spacing();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double step = nodes[i + 1] - nodes[i];
    if (!(step > 0.0) || std::abs(step - h) > 1e-12 * std::max(std::abs(h), 1.0))
      throw std::invalid_argument("Grid1D: nodes not uniformly increasing");
  }
}

void SampledFunction1D::validate() const {
  grid.validate();
  if (values.size() != grid.n)
    throw std::invalid_argument("SampledFunction1D: value array does not match grid");
  if (parity != Parity::none && parity_defect(*this, parity) > kParityTol)
    throw std::invalid_argument("SampledFunction1D: declared parity violated");
}

SampledFunction1D sample(const Grid1D& g, const std::function<double(double)>& f, Parity parity) {
  SampledFunction1D out;
  out.grid = g;
  out.values.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) out.values[i] = f(g.nodes[i]);
  out.parity = parity;
  out.validate();
  return out;
}

double parity_defect(const SampledFunction1D& f, Parity parity) {
  if (parity == Parity::none) return 0.0;
  double amax = 0.0;
  for (double v : f.values) amax = std::max(amax, std::abs(v));
  if (amax == 0.0) return 0.0;
  const std::size_t n = f.values.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mirrored = f.values[n - 1 - i];
    const double d = (parity == Parity::odd) ? std::abs(f.values[i] + mirrored)
                                             : std::abs(f.values[i] - mirrored);
    worst = std::max(worst, d);
  }
  return worst / amax;
}

}  // namespace cracktip
