#ifndef PARAB_DNL_TRANSFORM_HPP
#define PARAB_DNL_TRANSFORM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parab/problem.hpp"

namespace parab {

enum class FClass { Convergent, Divergent, Inconclusive };

struct ClassifyResult {
  FClass cls = FClass::Inconclusive;
  double tail_ratio = 0.0;          // median decade ratio of the increments
  std::vector<double> partials;     // int_{10^-j}^1 f^{-1/(k-1)}, j = 1..12
};

// Convergence classification of F(1) - F(eps), F a primitive of f^{-1/(k-1)}:
// decade increments with a geometric / constant tail test. Inconclusive is a
// first-class outcome; the caller then supplies the class manually.
ClassifyResult classify_F(const std::function<double(double)>& f, double k,
                          double quad_tol = 1e-10);

// Change of variables u = phi(v) with phi' = f(phi)^{1/(k-1)}:
// phi_inv by graded adaptive quadrature, phi by monotone root finding,
// Z(v) = (d/ds f^{1/(k-1)})|_{phi(v)}.
class TransformSpec {
 public:
  double k = 2.0;
  FClass cls = FClass::Convergent;
  double u0 = 0.0;          // quadrature anchor (0 convergent, 1 divergent)
  double domain_min = 0.0;  // of Z/phi in v: 0 or -infinity

  double phi(double v) const;      // v -> u
  double phi_inv(double u) const;  // u -> v
  double Z(double v) const;
  double f(double s) const { return f_(s); }
  double f_root_derivative(double s) const;  // d/ds f^{1/(k-1)}

 private:
  friend TransformSpec build_phi(const std::function<double(double)>&, double, FClass,
                                 std::optional<std::function<double(double)>>);
  std::function<double(double)> f_;
  std::optional<std::function<double(double)>> f_prime_;
};

TransformSpec build_phi(const std::function<double(double)>& f, double k, FClass cls,
                        std::optional<std::function<double(double)>> f_prime = std::nullopt);

struct SandwichRow {
  double s = 0.0;
  double lower = 0.0, value = 0.0, upper = 0.0;
};

struct SandwichReport {
  double omega = 0.0;  // f(0)^{1/(k-1)}
  std::size_t violations = 0;
  double worst_slack = 0.0;
  bool degenerate_z = false;  // omega-zero branch flag
  bool omega_zero_branch = false;
  std::vector<SandwichRow> rows;
};

// Verifies (omega1 s + omega)^{k-1} <= f(s) <= (omega2 s + omega)^{k-1} on a
// grid, the bound implied when Z stays in [omega1, omega2].
SandwichReport sandwich_check(const std::function<double(double)>& f, double k, double omega1,
                              double omega2, const std::vector<double>& s_grid,
                              double slack_tol = 1e-8);

// f(s) = (s + a)^alpha with closed-form phi for alpha <= k-1.
struct PowerFamily {
  double alpha = 1.0;
  double a = 0.0;
  double k = 2.0;
  double c_k() const { return (k - 1.0 - alpha) / (k - 1.0); }
  bool exponential_branch() const { return alpha == k - 1.0; }
  double f(double s) const;
  double phi(double v) const;  // closed form (Remark-level identities)
  std::function<double(double)> as_function() const;
};

struct TransformedProblem {
  ProblemParams params;   // v-problem with Z from the transform
  double data_inf = 0.0;  // phi^{-1}(inf g)
  double data_sup = 0.0;  // phi^{-1}(sup g)
  FClass branch;          // minimum-principle path: Convergent -> ball decay
                          // construction, Divergent -> generic sub-solution
};

// Maps the u-problem (chi == 0 required) to its v-problem: Z from the
// transform, data bounds through phi^{-1}. Throws when the data leaves phi's
// range.
TransformedProblem transformed_problem(const ProblemParams& params, const TransformSpec& transform,
                                       double g_inf, double g_sup);

}  // namespace parab

#endif
