#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cracktip {

inline constexpr double kParityTol = 1e-10;

struct Grid1D {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 0;
  std::vector<double> nodes;

  static Grid1D uniform(double lo, double hi, std::size_t n);

  double spacing() const { return (hi - lo) / static_cast<double>(n - 1); }

  // index of the node closest to the interval midpoint; exact for odd n
  std::size_t midpoint_index() const { return (n - 1) / 2; }

  bool same_as(const Grid1D& other, double tol = 1e-12) const;
  void validate() const;
};

enum class Parity { none, odd, even };

// real-valued function sampled on a Grid1D, with optional parity about the midpoint
struct SampledFunction1D {
  Grid1D grid;
  std::vector<double> values;
  Parity parity = Parity::none;

  void validate() const;
};

SampledFunction1D sample(const Grid1D& g, const std::function<double(double)>& f,
                         Parity parity = Parity::none);

// largest |values[i]+values[n-1-i]| (odd) or |values[i]-values[n-1-i]| (even),
// relative to max|values|; 0 for a zero function
double parity_defect(const SampledFunction1D& f, Parity parity);

}  // namespace cracktip
