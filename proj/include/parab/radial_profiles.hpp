#ifndef PARAB_RADIAL_PROFILES_HPP
#define PARAB_RADIAL_PROFILES_HPP

#include <string>
#include <vector>

namespace parab {

enum class ProfileKind { Power, RegularizedPower, ExpSquare, ExpLinearReg, InverseGap, CaseIProfile };

// Scalar profile v(r) with exact first/second derivatives.
//   Power:            v = r^beta, beta > 1
//   RegularizedPower: v = int_0^{r^beta} (1+tau^p)^-1 dtau, p = (beta-beta_bar)/beta
//   ExpSquare:        v = e^{c r^2}
//   ExpLinearReg:     v = e^{c r} - 1 - c r
//   InverseGap:       v = (R^2 - r^2)^-1 on [0, R)
//   CaseIProfile:     v = [R^s - r^s]^m, s = (k+1)/k, m = k/(k-1), on [0, R]
class RadialProfile {
 public:
  static RadialProfile power(double beta);
  static RadialProfile regularized_power(double beta, double beta_bar);
  static RadialProfile exp_square(double c);
  static RadialProfile exp_linear_reg(double c);
  static RadialProfile inverse_gap(double R);
  static RadialProfile case_i(double k, double R);

  ProfileKind kind() const { return kind_; }
  double beta() const { return beta_; }
  double beta_bar() const { return beta_bar_; }
  double p() const { return p_; }
  double c() const { return c_; }
  double R() const { return R_; }
  double k() const { return k_; }

  double value(double r) const;
  double d1(double r) const;  // one-sided limit reported at r = 0
  double d2(double r) const;
  // v(r_hi) - v(r_lo) without cancellation (single quadrature for
  // RegularizedPower).
  double value_between(double r_lo, double r_hi) const;

  // inf over r > 0 of (1 - r v''/v'); -infinity for the exponential and
  // InverseGap kinds. Drives the case-dependent lower spectral bound.
  double coeff_lower_bound() const;

  bool nonincreasing() const { return kind_ == ProfileKind::CaseIProfile; }
  // Largest r the profile accepts (R for the ball-bound kinds).
  double domain_max() const;
  std::string describe() const;

 private:
  RadialProfile() = default;
  void check_domain(double r) const;
  ProfileKind kind_ = ProfileKind::Power;
  double beta_ = 0, beta_bar_ = 0, p_ = 0, c_ = 0, R_ = 0, k_ = 0;
  double head_integral_ = 0;  // RegularizedPower: cached int_0^1 (1+tau^p)^-1
};

struct BoundsRow {
  double r = 0;
  std::string quantity;
  double lhs = 0, rhs = 0;
  double slack = 0;  // (lhs - rhs)/max(1,|lhs|,|rhs|); positive = violated
};

struct BoundsReport {
  std::vector<BoundsRow> rows;  // worst row per quantity plus all violations
  std::vector<BoundsRow> violations;
  double worst_slack = 0.0;
  long checks = 0;
  bool passed = true;
};

// Lemma-suite for the regularized power profile: two-sided value bound,
// difference-quotient sandwich above R_anchor (> 1 required), derivative
// bounds, and the v'^k/r bound for the supplied homogeneity k (gamma = k+1).
BoundsReport bounds_suite(const RadialProfile& profile, const std::vector<double>& r_samples,
                          double R_anchor, double k, double slack_tol = 1e-10);

}  // namespace parab

#endif
