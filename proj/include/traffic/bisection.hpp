#ifndef TRAFFIC_BISECTION_HPP
#define TRAFFIC_BISECTION_HPP

#include <stdexcept>

namespace traffic {

// Bisection on a bracket [lo, hi] with f(lo) and f(hi) of opposite sign;
// stops when the bracket width drops below tol_x. All scalar roots in this
// project live on monotone branches, so bisection is enough.
template <class F>
double bisect(F&& f, double lo, double hi, double tol_x, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect: no sign change on bracket");
  for (int i = 0; i < max_iter && hi - lo > tol_x; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace traffic

#endif
