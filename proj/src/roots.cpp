#include "cracktip/roots.hpp"

#include <cmath>
#include <stdexcept>

namespace cracktip {

double find_root(const std::function<double(double)>& F, RootBracket bracket, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_root: tol must be positive");
  double a = bracket.a, b = bracket.b;
  if (!(a < b)) throw std::invalid_argument("find_root: bracket must have a < b");
  double fa = F(a);
  double fb = F(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb))
    throw std::invalid_argument("find_root: no sign change over bracket");
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = F(m);
    if (fm == 0.0) return m;
    if (std::signbit(fa) != std::signbit(fm)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  if ((b - a) > tol) throw std::runtime_error("find_root: bisection failed to converge");
  return 0.5 * (a + b);
}

}  // namespace cracktip
