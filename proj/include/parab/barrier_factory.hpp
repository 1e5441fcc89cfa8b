#ifndef PARAB_BARRIER_FACTORY_HPP
#define PARAB_BARRIER_FACTORY_HPP

#include <optional>
#include <string>
#include <vector>

#include "parab/problem.hpp"
#include "parab/radial_profiles.hpp"

namespace parab {

enum class Direction { Super, Sub };

// Space-time shape of a barrier:
//   AtPlusBv:      w = sign * (a t + b (1+t) v(r))
//   CaseIDecay:    w = mu [1-(r/R)^s]^m / (1+t/E)^{1/(k-1)}   (sub, ball)
//   GaussianDecay: w = mu e^{-E r^2} e^{-F t}                 (sub, all space)
enum class TimeShape { AtPlusBv, CaseIDecay, GaussianDecay };

struct Region {
  bool all_space = true;
  double R = 0.0;
  static Region everything() { return Region{true, 0.0}; }
  static Region ball(double R) { return Region{false, R}; }
};

struct ScalarCondition {
  std::string name;
  double lhs = 0.0, rhs = 0.0;  // claim: lhs <= rhs
  bool ok(double tol = 1e-12) const { return lhs <= rhs + tol; }
};

struct MonomialTerm {
  double coef = 0.0;
  double power = 0.0;
};

// Evidence that the residual upper bound stays nonpositive on [r0, inf):
// either a monomial sum checked by dominance, or closed-form scalar
// conditions for the exponential shapes.
struct TailCheck {
  std::vector<MonomialTerm> monomials;  // claim: sum coef_i r^{power_i} <= 0 on [r0, inf)
  double r0 = 0.0;
  std::vector<ScalarCondition> conditions;
  std::string note;
  bool applicable = false;  // false for bounded regions fully covered by sampling
};

bool monomials_nonpositive(const std::vector<MonomialTerm>& terms, double r0, double tol = 1e-12);

struct BarrierSpec {
  Direction direction = Direction::Super;
  double sign = 1.0;
  double a = 0.0;
  double b = 0.0;
  RadialProfile profile = RadialProfile::power(2.0);
  TimeShape shape = TimeShape::AtPlusBv;
  Region region;
  std::string case_id;
  double a_limit = 0.0;   // b->0 limit of a; for the ball/decay specials the
                          // R->infinity (resp. E->0) limiting center value
  double chi_bound = 0.0; // adversarial chi replacing chi(t) in certification

  // Resolved case constants (NaN when not used by the case).
  double c = 0.0, p_reg = 0.0, R_case = 0.0, r_star = 0.0, b_max = 0.0;
  double epsilon = 0.0, mu = 0.0;
  double E_const = 0.0, F_const = 0.0;  // case E/F (Part I) or Ebar/Fbar (Part II)
  double M_used = 1.0, N_used = 0.0;
  double decay_E = 0.0, decay_F = 0.0;  // CaseIDecay / GaussianDecay time constants
  double k_op = 0.0;

  double value(double r, double t) const;
  double dt(double r, double t) const;
  double dr(double r, double t) const;
  double drr(double r, double t) const;
  // Barrier value range over region x [0, T] (interval evaluation).
  std::pair<double, double> value_range(double T) const;
  // Largest radius safe to evaluate in double precision (exp shapes cap it).
  double r_cap_numeric() const;
};

// Super-solution of the sign P_sigma(w) <= 0, w = a t + b (1+t) v(r), case
// dispatch on (k, sigma). Throws when b exceeds the case admissibility bound
// (the violated inequality is named) or the barrier range leaves Z's domain.
BarrierSpec build_supersolution(const ProblemParams& params, double b);

// Sub-solution w = -(a t + b (1+t) v(r)); constants use the case-dependent
// lower spectral bound in place of M. Requires Z defined on all of R.
BarrierSpec build_subsolution(const ProblemParams& params, double b);

enum class SpecialCase { I1, I2, II1, II2, III };

// Ball/decay constructions: I1 (k>1, chi==0, positive decaying sub on a
// ball), I2 (k=1 Gaussian sub), II1/II2 (chi<0 super on a ball), III (chi>0
// sub on a ball). mu_or_nu is the data bound mu for I1/I2 (unused otherwise);
// decay_E is the free E > 0 of case I2.
BarrierSpec build_special(const ProblemParams& params, SpecialCase which, double R,
                          double mu_or_nu, std::optional<double> decay_E = std::nullopt);

// Case id the (k, sigma) dispatch selects for the given direction.
std::string dispatch_case_id(const ProblemParams& params, Direction dir);

// Largest admissible b for the dispatched case (+inf when unconstrained).
double max_admissible_b(const ProblemParams& params, Direction dir);

// Closed-form lim_{b->0} a for the dispatched case.
double a_limit_table(const ProblemParams& params, Direction dir);

struct ALimitExtrapolation {
  double extrapolated = 0.0;
  double closed_form = 0.0;
  std::vector<std::pair<double, double>> samples;  // (b, a(b))
  std::string note;
};

// Numeric cross-check of a_limit_table: a(b) over b = 2^-j (admissible j
// only), Aitken-extrapolated to b -> 0.
ALimitExtrapolation extrapolate_a_limit(const ProblemParams& params, Direction dir,
                                        int j_min = 1, int j_max = 20);

// Residual tail evidence for the barrier's case, recomputed from the
// barrier's current constants so stale specs never certify.
TailCheck make_tail_check(const ProblemParams& params, const BarrierSpec& barrier,
                          double r_probe);

// Case-dependent lower spectral bound: min(0, Lambda_min at the coefficient
// interval's lower end), or min(0, Lambda^inf) when the coefficient is
// unbounded below. Throws when that requires a finite Lambda^inf the
// operator does not have.
double case_lower_bound(const ProblemParams& params, double coeff_lower);

}  // namespace parab

#endif
