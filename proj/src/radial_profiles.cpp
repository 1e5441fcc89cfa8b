#include "parab/radial_profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parab/quadrature.hpp"

namespace parab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double reg_integrand(double tau, double p) { return 1.0 / (1.0 + std::pow(tau, p)); }

// int_{u_lo}^{u_hi} (1+tau^p)^-1 dtau with a split at tau = 1 (the integrand
// kink scale).
double reg_integral(double u_lo, double u_hi, double p) {
  if (u_hi <= u_lo) return 0.0;
  auto f = [p](double t) { return reg_integrand(t, p); };
  double total = 0.0;
  if (u_lo < 1.0) total += integrate(f, u_lo, std::min(1.0, u_hi)).value;
  if (u_hi > 1.0) total += integrate(f, std::max(1.0, u_lo), u_hi).value;
  return total;
}

}  // namespace

RadialProfile RadialProfile::power(double beta) {
  if (!(beta > 1.0)) throw std::invalid_argument("Power: beta must be > 1");
  RadialProfile v;
  v.kind_ = ProfileKind::Power;
  v.beta_ = beta;
  return v;
}

RadialProfile RadialProfile::regularized_power(double beta, double beta_bar) {
  // The barrier cases always have 1 < beta_bar; the constructor is permissive
  // down to beta_bar > 0 (the integral formulas only need 0 < p < 1).
  if (!(beta > 1.0) || !(0.0 < beta_bar && beta_bar < beta))
    throw std::invalid_argument("RegularizedPower: need beta > 1 and 0 < beta_bar < beta");
  RadialProfile v;
  v.kind_ = ProfileKind::RegularizedPower;
  v.beta_ = beta;
  v.beta_bar_ = beta_bar;
  v.p_ = (beta - beta_bar) / beta;
  v.head_integral_ = integrate([&v](double t) { return reg_integrand(t, v.p_); }, 0.0, 1.0).value;
  return v;
}

RadialProfile RadialProfile::exp_square(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("ExpSquare: c must be > 0");
  RadialProfile v;
  v.kind_ = ProfileKind::ExpSquare;
  v.c_ = c;
  return v;
}

RadialProfile RadialProfile::exp_linear_reg(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("ExpLinearReg: c must be > 0");
  RadialProfile v;
  v.kind_ = ProfileKind::ExpLinearReg;
  v.c_ = c;
  return v;
}

RadialProfile RadialProfile::inverse_gap(double R) {
  if (!(R > 0.0)) throw std::invalid_argument("InverseGap: R must be > 0");
  RadialProfile v;
  v.kind_ = ProfileKind::InverseGap;
  v.R_ = R;
  return v;
}

RadialProfile RadialProfile::case_i(double k, double R) {
  if (!(k > 1.0)) throw std::invalid_argument("CaseIProfile: k must be > 1");
  if (!(R > 0.0)) throw std::invalid_argument("CaseIProfile: R must be > 0");
  RadialProfile v;
  v.kind_ = ProfileKind::CaseIProfile;
  v.k_ = k;
  v.R_ = R;
  return v;
}

void RadialProfile::check_domain(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r))
    throw std::domain_error(describe() + ": r must be finite and >= 0, got " + std::to_string(r));
  if (kind_ == ProfileKind::InverseGap && r >= R_)
    throw std::domain_error(describe() + ": r must be < R");
  if (kind_ == ProfileKind::CaseIProfile && r > R_)
    throw std::domain_error(describe() + ": r must be <= R");
}

double RadialProfile::domain_max() const {
  switch (kind_) {
    case ProfileKind::InverseGap:
    case ProfileKind::CaseIProfile:
      return R_;
    default:
      return kInf;
  }
}

double RadialProfile::value(double r) const {
  check_domain(r);
  switch (kind_) {
    case ProfileKind::Power:
      return std::pow(r, beta_);
    case ProfileKind::RegularizedPower: {
      const double u = std::pow(r, beta_);
      if (u <= 1.0) return reg_integral(0.0, u, p_);
      return head_integral_ + reg_integral(1.0, u, p_);
    }
    case ProfileKind::ExpSquare:
      return std::exp(c_ * r * r);
    case ProfileKind::ExpLinearReg:
      return std::expm1(c_ * r) - c_ * r;
    case ProfileKind::InverseGap:
      return 1.0 / (R_ * R_ - r * r);
    case ProfileKind::CaseIProfile: {
      const double s = (k_ + 1.0) / k_;
      const double m = k_ / (k_ - 1.0);
      return std::pow(std::pow(R_, s) - std::pow(r, s), m);
    }
  }
  throw std::logic_error("value: unknown kind");
}

double RadialProfile::value_between(double r_lo, double r_hi) const {
  check_domain(r_lo);
  check_domain(r_hi);
  if (kind_ == ProfileKind::RegularizedPower)
    return reg_integral(std::pow(r_lo, beta_), std::pow(r_hi, beta_), p_);
  return value(r_hi) - value(r_lo);
}

double RadialProfile::d1(double r) const {
  check_domain(r);
  switch (kind_) {
    case ProfileKind::Power:
      return beta_ * std::pow(r, beta_ - 1.0);
    case ProfileKind::RegularizedPower:
      return beta_ * std::pow(r, beta_ - 1.0) / (1.0 + std::pow(r, p_ * beta_));
    case ProfileKind::ExpSquare:
      return 2.0 * c_ * r * std::exp(c_ * r * r);
    case ProfileKind::ExpLinearReg:
      return c_ * std::expm1(c_ * r);
    case ProfileKind::InverseGap: {
      const double gap = R_ * R_ - r * r;
      return 2.0 * r / (gap * gap);
    }
    case ProfileKind::CaseIProfile: {
      const double s = (k_ + 1.0) / k_;
      const double m = k_ / (k_ - 1.0);
      const double g = std::pow(R_, s) - std::pow(r, s);
      if (r == 0.0) return 0.0;  // s - 1 = 1/k > 0
      return -m * s * std::pow(r, s - 1.0) * std::pow(g, m - 1.0);
    }
  }
  throw std::logic_error("d1: unknown kind");
}

double RadialProfile::d2(double r) const {
  check_domain(r);
  switch (kind_) {
    case ProfileKind::Power:
      return beta_ * (beta_ - 1.0) * std::pow(r, beta_ - 2.0);
    case ProfileKind::RegularizedPower: {
      const double rp = std::pow(r, p_ * beta_);
      const double den = 1.0 + rp;
      return beta_ * std::pow(r, beta_ - 2.0) * ((beta_ - 1.0) + (beta_bar_ - 1.0) * rp) /
             (den * den);
    }
    case ProfileKind::ExpSquare:
      return (2.0 * c_ + 4.0 * c_ * c_ * r * r) * std::exp(c_ * r * r);
    case ProfileKind::ExpLinearReg:
      return c_ * c_ * std::exp(c_ * r);
    case ProfileKind::InverseGap: {
      const double gap = R_ * R_ - r * r;
      return (2.0 * R_ * R_ + 6.0 * r * r) / (gap * gap * gap);
    }
    case ProfileKind::CaseIProfile: {
      const double s = (k_ + 1.0) / k_;
      const double m = k_ / (k_ - 1.0);
      const double g = std::pow(R_, s) - std::pow(r, s);
      if (r == 0.0) return -kInf;  // s - 2 < 0: C^{1,alpha} only at the center
      return -m * s * (s - 1.0) * std::pow(r, s - 2.0) * std::pow(g, m - 1.0) +
             m * s * s * (m - 1.0) * std::pow(r, 2.0 * s - 2.0) * std::pow(g, m - 2.0);
    }
  }
  throw std::logic_error("d2: unknown kind");
}

double RadialProfile::coeff_lower_bound() const {
  switch (kind_) {
    case ProfileKind::Power:
      return 2.0 - beta_;
    case ProfileKind::RegularizedPower:
      // (1 - r v''/v') = [(2-beta) + (2-beta_bar) r^{p beta}]/(1 + r^{p beta})
      return std::min(2.0 - beta_, 2.0 - beta_bar_);
    case ProfileKind::CaseIProfile:
      return (k_ - 1.0) / k_;  // 2 - (k+1)/k
    case ProfileKind::ExpSquare:
    case ProfileKind::ExpLinearReg:
    case ProfileKind::InverseGap:
      return -kInf;
  }
  throw std::logic_error("coeff_lower_bound: unknown kind");
}

std::string RadialProfile::describe() const {
  switch (kind_) {
    case ProfileKind::Power:
      return "power(beta=" + std::to_string(beta_) + ")";
    case ProfileKind::RegularizedPower:
      return "regularized_power(beta=" + std::to_string(beta_) +
             ",beta_bar=" + std::to_string(beta_bar_) + ",p=" + std::to_string(p_) + ")";
    case ProfileKind::ExpSquare:
      return "exp_square(c=" + std::to_string(c_) + ")";
    case ProfileKind::ExpLinearReg:
      return "exp_linear_reg(c=" + std::to_string(c_) + ")";
    case ProfileKind::InverseGap:
      return "inverse_gap(R=" + std::to_string(R_) + ")";
    case ProfileKind::CaseIProfile:
      return "case_i(k=" + std::to_string(k_) + ",R=" + std::to_string(R_) + ")";
  }
  return "?";
}

namespace {

double rel_slack(double lhs, double rhs) {
  return (lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

struct SuiteAccum {
  BoundsReport rep;
  double tol;
  void add(double r, const std::string& q, double lhs, double rhs) {
    BoundsRow row{r, q, lhs, rhs, rel_slack(lhs, rhs)};
    ++rep.checks;
    rep.worst_slack = std::max(rep.worst_slack, row.slack);
    if (row.slack > tol) {
      rep.violations.push_back(row);
      rep.passed = false;
    }
    // Keep the worst row per quantity for the CSV dump.
    for (auto& kept : rep.rows)
      if (kept.quantity == q) {
        if (row.slack > kept.slack) kept = row;
        return;
      }
    rep.rows.push_back(row);
  }
};

}  // namespace

BoundsReport bounds_suite(const RadialProfile& v, const std::vector<double>& r_samples,
                          double R_anchor, double k, double slack_tol) {
  if (v.kind() != ProfileKind::RegularizedPower)
    throw std::invalid_argument("bounds_suite: profile must be RegularizedPower");
  if (!(R_anchor > 1.0)) throw std::invalid_argument("bounds_suite: R_anchor must be > 1");
  const double beta = v.beta();
  const double beta_bar = v.beta_bar();
  const double p = v.p();
  const double gamma = k + 1.0;

  SuiteAccum acc;
  acc.tol = slack_tol;
  const double vR = v.value(R_anchor);

  for (double r : r_samples) {
    const double val = v.value(r);
    const double rb = std::pow(r, beta);
    const double rbb = std::pow(r, beta_bar);

    // (iii) r^beta/(1+r^{beta p}) <= v <= min(r^beta, r^beta_bar/(1-p))
    acc.add(r, "iii_lower", rb / (1.0 + std::pow(r, beta * p)), val);
    acc.add(r, "iii_upper", val, std::min(rb, rbb / (1.0 - p)));

    // (v) v' <= beta min(r^{beta_bar-1}, r^{beta-1})
    const double d1 = v.d1(r);
    acc.add(r, "v_deriv", d1,
            beta * std::min(std::pow(r, beta_bar - 1.0), std::pow(r, beta - 1.0)));

    // (vi) v'^k / r <= beta^k min(r^{k beta - gamma}, r^{k beta_bar - gamma}); r > 0 only
    if (r > 0.0) {
      acc.add(r, "vi_ratio", std::pow(d1, k) / r,
              std::pow(beta, k) * std::min(std::pow(r, k * beta - gamma),
                                           std::pow(r, k * beta_bar - gamma)));
    }

    // (iv) sandwich for the difference quotient beyond the anchor
    if (r >= R_anchor) {
      double ratio;
      if (r - R_anchor <= 1e-12 * R_anchor) {
        // Limit value at r = R: v'(R)/(beta_bar R^{beta_bar-1}).
        ratio = v.d1(R_anchor) / (beta_bar * std::pow(R_anchor, beta_bar - 1.0));
      } else {
        ratio = v.value_between(R_anchor, r) / (rbb - std::pow(R_anchor, beta_bar));
      }
      acc.add(r, "iv_lower", 1.0 / (2.0 * (1.0 - p)), ratio);
      acc.add(r, "iv_upper", ratio, 1.0 / (1.0 - p));
    }
  }
  (void)vR;
  return acc.rep;
}

}  // namespace parab
