#pragma once

#include <stdexcept>

namespace chiral {

// Bisection for a continuous scalar function with a sign change on [lo, hi].
// Shrinks the bracket until its width drops below `xtol` (or an exact zero is
// hit) and returns the midpoint.
template <typename F>
double bisect(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
  if (!(lo < hi)) {
    throw std::invalid_argument("bisect: bracket must satisfy lo < hi");
  }
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw std::domain_error("bisect: no sign change on the bracket");
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace chiral
