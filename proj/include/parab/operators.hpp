#ifndef PARAB_OPERATORS_HPP
#define PARAB_OPERATORS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "parab/linalg.hpp"

namespace parab {

enum class Exec { Serial, Parallel };

enum class OperatorKind { GradTraceMinusInfinity, TruncatedEigenSum, Custom };

using CustomEvaluator = std::function<double(const Vec&, const SymMatrix&)>;

// Degenerate elliptic operator H(q, X) with homogeneity metadata:
// H(theta q, X) = |theta|^k1 H(q, X), k = k1 + 1, gamma = k1 + 2.
struct OperatorSpec {
  OperatorKind kind = OperatorKind::GradTraceMinusInfinity;
  int n = 2;
  double p = 0.0;  // gradient exponent of the built-in families
  int m = 2;       // TruncatedEigenSum: eigenvalue sum runs over indices m..n
  double k1 = 2.0;
  std::string name_tag;
  CustomEvaluator evaluator;

  double k() const { return k1 + 1.0; }
  double gamma() const { return k1 + 2.0; }
  std::string name() const;

  // |Du|^p (|Du|^2 tr X - q^T X q), k1 = p + 2.
  static OperatorSpec grad_trace_minus_infinity(double p, int n);
  // |q|^p sum_{i=m..n} mu_i(X) with mu_1 >= ... >= mu_n, k1 = p, 2 <= m < n.
  static OperatorSpec truncated_eigen_sum(double p, int m, int n);
  static OperatorSpec custom(std::string name, double k1, int n, CustomEvaluator eval);
  // mu_2 of a 3x3 argument: a k=1 example with Lambda^sup = 1 and
  // Lambda^inf = -1 both finite.
  static OperatorSpec middle_eigenvalue(int n = 3);
};

double eval_H(const OperatorSpec& op, const Vec& q, const SymMatrix& X);

struct LambdaExtremes {
  double lambda_min = 0.0;  // min_e H(e, lambda e(x)e - I)
  double lambda_max = 0.0;  // max_e H(e, lambda e(x)e + I)
  double spread_min = 0.0;  // max-min over sampled e (e-dependence), same rows
  double spread_max = 0.0;
};

LambdaExtremes lambda_extremes(const OperatorSpec& op, double lambda, int sphere_samples);

struct TailEstimate {
  bool finite = false;
  double value = 0.0;       // meaningful only when finite
  double tail_slope = 0.0;  // slope over the checked tail decade
};

struct SpectralReport {
  std::vector<double> lambda_grid;
  std::vector<double> lambda_min_values;
  std::vector<double> lambda_max_values;
  TailEstimate lambda_sup;
  TailEstimate lambda_inf;
  int sphere_samples = 0;
  bool monotone_ok = true;  // false flags a Condition-A violation
  double worst_monotonicity_violation = 0.0;
};

SpectralReport estimate_lambda_sup_inf(const OperatorSpec& op,
                                       std::pair<double, double> lambda_range, int steps,
                                       int sphere_samples = 64,
                                       double finite_slope_threshold = 1e-6);

struct ConditionEntry {
  bool passed = true;
  double worst_violation = 0.0;
  std::string note;
};

struct ConditionReport {
  ConditionEntry monotonicity;  // Condition A
  ConditionEntry homogeneity;   // Condition B
  ConditionEntry growth;        // Condition C
  int trials = 0;
  bool all_passed() const { return monotonicity.passed && homogeneity.passed && growth.passed; }
};

ConditionReport check_conditions(const OperatorSpec& op, int trials, std::uint64_t seed,
                                 Exec exec = Exec::Parallel);

}  // namespace parab

#endif
