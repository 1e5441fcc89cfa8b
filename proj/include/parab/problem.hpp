#ifndef PARAB_PROBLEM_HPP
#define PARAB_PROBLEM_HPP

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "parab/operators.hpp"

namespace parab {

// Non-increasing gradient-correction coefficient Z >= 0 with its domain
// [domain_min, infinity); domain_min = -infinity means all of R.
struct ZSpec {
  enum class Kind { Zero, ZeroAbove, PowerDecay, Custom };
  Kind kind = Kind::Zero;
  double s0 = 0.0;
  double domain_min = -std::numeric_limits<double>::infinity();
  std::function<double(double)> fn;
  std::string label = "zero";

  double operator()(double s) const;
  bool contains(double lo, double hi) const { return lo >= domain_min && hi >= lo; }

  static ZSpec zero();
  // max(0, s0 - s): vanishes for s >= s0.
  static ZSpec zero_above(double s0, double domain_min);
  // 1/(1 + max(s - domain_floor, 0)) anchored at the domain start (constant
  // extension below 0 keeps it non-increasing on all of R).
  static ZSpec power_decay(double domain_min);
  static ZSpec custom(std::function<double(double)> fn, double domain_min, std::string label);
};

// Bounded continuous forcing coefficient chi(t) on (0, T).
struct ChiSpec {
  enum class Kind { Zero, Const, Sin, Custom };
  Kind kind = Kind::Zero;
  double value = 0.0;  // Const value / Sin amplitude
  double T = 1.0;
  std::function<double(double)> fn;
  double custom_sup_abs = 0.0, custom_sup = 0.0, custom_inf = 0.0;

  double operator()(double t) const;
  double sup_abs() const;
  double sup() const;
  double inf() const;

  static ChiSpec zero(double T);
  static ChiSpec constant(double value, double T);
  static ChiSpec sine(double amplitude, double T);  // amplitude*sin(pi t / T)
  static ChiSpec custom(std::function<double(double)> fn, double T, double sup_abs, double sup,
                        double inf);
};

// Shared problem data: operator (with homogeneity metadata), forcing exponent
// sigma, horizon T, chi bounds, spectral constants, Z, and the barrier center.
struct ProblemParams {
  int n = 2;
  OperatorSpec op;
  double sigma = 0.0;
  double T = 1.0;
  double alpha = 0.0;                    // sup_{[0,T]} |chi|
  std::optional<double> alpha_hat_neg;   // sup chi when chi <= 0 (negative)
  std::optional<double> alpha_hat_pos;   // inf chi when chi >= 0
  double M = 1.0;                        // max(Lambda^sup, 1)
  std::optional<double> lambda_inf;      // finite Lambda^inf when available
  std::optional<double> N_override;      // user-forced lower bound (<= 0)
  ZSpec Z;
  ChiSpec chi;
  Vec z_center;

  double gamma_star() const;  // gamma/(gamma-2), requires k > 1
  double sigma_star() const;  // sigma/(sigma-1), requires sigma > 1

  // Computes alpha from chi and M / Lambda^inf from a spectral sweep. Throws
  // if Lambda^sup is not finite (the standing boundedness condition).
  static ProblemParams make(OperatorSpec op, double sigma, double T, ChiSpec chi, ZSpec Z,
                            Vec z_center = {});
};

}  // namespace parab

#endif
