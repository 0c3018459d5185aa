#pragma once

#include <functional>
#include <vector>

#include "cracktip/grid.hpp"

namespace cracktip {

// composite Simpson on uniformly spaced samples; a 3/8 tail handles odd
// interval counts, keeping 4th-order accuracy
double integrate_values(const std::vector<double>& y, double h);

double integrate(const SampledFunction1D& f);

// antiderivative on the same grid, F[0] = 0, 4th-order (local cubic per step)
std::vector<double> cumulative_values(const std::vector<double>& y, double h);

SampledFunction1D cumulative_integral(const SampledFunction1D& f);

// integral of fn over [a,b] sampled at m uniform nodes
double integrate_function(const std::function<double(double)>& fn, double a, double b,
                          std::size_t m = 401);

// tensor integral over [0,s1]x[phi0,phi1] of line(s,phi) with one Simpson pass per
// radial line and one across lines; OpenMP over lines, bitwise-deterministic for
// any thread count
double integrate_2d(const std::function<double(double, double)>& line, double s0, double s1,
                    double phi0, double phi1, std::size_t ns, std::size_t nphi);

// straightforward serial reference for integrate_2d, kept for testing
double integrate_2d_serial(const std::function<double(double, double)>& line, double s0, double s1,
                           double phi0, double phi1, std::size_t ns, std::size_t nphi);

}  // namespace cracktip
