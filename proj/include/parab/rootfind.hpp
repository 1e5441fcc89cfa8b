#ifndef PARAB_ROOTFIND_HPP
#define PARAB_ROOTFIND_HPP

#include <functional>

namespace parab {

struct BisectOptions {
  double x_tol_rel = 1e-12;
  int max_iter = 400;
};

// Root of f on [lo, hi]. Requires a sign change; throws std::runtime_error
// with bracket diagnostics (f(lo), f(hi)) otherwise.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const BisectOptions& opt = {});

// Doubles hi starting from hi0 until f changes sign against f(lo), capped at
// hi_cap. Returns the bracketing hi; throws if the cap is reached first.
double expand_upper_bracket(const std::function<double(double)>& f, double lo, double hi0,
                            double hi_cap);

}  // namespace parab

#endif
