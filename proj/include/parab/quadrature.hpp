#ifndef PARAB_QUADRATURE_HPP
#define PARAB_QUADRATURE_HPP

#include <functional>

namespace parab {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a,b]. Bisects until the local Kronrod
// error estimate meets max(abs_tol, rel_tol*|I|) distributed over the
// subintervals. Endpoints are never evaluated (all K15 nodes are interior),
// so integrable endpoint singularities are acceptable.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-13, int max_depth = 52);

}  // namespace parab

#endif
