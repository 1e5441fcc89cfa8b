#include "parab/rootfind.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace parab {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              const BisectOptions& opt) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::runtime_error("bisect: no sign change on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "], f(lo)=" + std::to_string(flo) +
                             ", f(hi)=" + std::to_string(fhi));
  }
  for (int it = 0; it < opt.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
    if (hi - lo <= opt.x_tol_rel * (std::abs(lo) + std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

double expand_upper_bracket(const std::function<double(double)>& f, double lo, double hi0,
                            double hi_cap) {
  const double flo = f(lo);
  double hi = hi0;
  while (hi <= hi_cap) {
    if ((f(hi) > 0.0) != (flo > 0.0)) return hi;
    hi *= 2.0;
  }
  throw std::runtime_error("expand_upper_bracket: no sign change up to cap " +
                           std::to_string(hi_cap));
}

}  // namespace parab
