#pragma once

#include <vector>

#include "cracktip/grid.hpp"

namespace cracktip {

// Fornberg weights for the m-th derivative at x0 from arbitrary nodes
std::vector<double> fd_weights(const std::vector<double>& xs, double x0, int m);

// finite-difference derivative of uniformly spaced samples.
// order 1: 5-point stencils, O(h^4) everywhere.
// order 2: 5-point interior / 6-point one-sided, O(h^4) interior, O(h^3)+ at the ends.
std::vector<double> differentiate_values(const std::vector<double>& y, double h, int order);

// derivative at a single endpoint (side 0 = left, 1 = right), one-sided O(h^4)
double boundary_derivative(const std::vector<double>& y, double h, int order, int side);

SampledFunction1D differentiate(const SampledFunction1D& f, int order);

}  // namespace cracktip
