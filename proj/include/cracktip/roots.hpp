#pragma once

#include <functional>

namespace cracktip {

struct RootBracket {
  double a = 0.0;
  double b = 0.0;
};

// bisection; returns the midpoint of the final bracket of width <= tol
double find_root(const std::function<double(double)>& F, RootBracket bracket, double tol);

}  // namespace cracktip
