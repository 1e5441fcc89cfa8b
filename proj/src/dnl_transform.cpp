#include "parab/dnl_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parab/quadrature.hpp"
#include "parab/rootfind.hpp"

namespace parab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double integrand(const std::function<double(double)>& f, double k, double s) {
  const double fs = f(s);
  if (!(fs > 0.0))
    throw std::domain_error("dnl: f must be positive on (0,1], got f(" + std::to_string(s) +
                            ") = " + std::to_string(fs));
  return std::pow(fs, -1.0 / (k - 1.0));
}

// int_{lo}^{hi} f^{-1/(k-1)} with a graded mesh toward 0 to resolve the
// integrable singularity (theta_j = 10^-j).
double graded_integral(const std::function<double(double)>& f, double k, double lo, double hi) {
  if (hi <= lo) return 0.0;
  auto g = [&](double s) { return integrand(f, k, s); };
  double total = 0.0;
  double a = lo;
  if (lo == 0.0) {
    double first = std::min(hi, 1e-12 * std::max(1.0, hi));
    total += integrate(g, 0.0, first).value;
    a = first;
  }
  while (a < hi) {
    const double b = std::min(hi, a * 10.0 + 1e-300);
    total += integrate(g, a, b).value;
    a = b;
  }
  return total;
}

}  // namespace

ClassifyResult classify_F(const std::function<double(double)>& f, double k, double quad_tol) {
  if (!(k > 1.0)) throw std::invalid_argument("classify_F: k must be > 1");
  ClassifyResult out;
  auto g = [&](double s) { return integrand(f, k, s); };

  // partials[j-1] = int_{10^-j}^{1}; increments are per-decade tails.
  std::vector<double> increments;
  double total = 0.0;
  for (int j = 1; j <= 12; ++j) {
    const double lo = std::pow(10.0, -j);
    const double hi = (j == 1) ? 1.0 : std::pow(10.0, -(j - 1));
    const double inc = integrate(g, lo, hi).value;
    total += inc;
    increments.push_back(inc);
    out.partials.push_back(total);
  }

  std::vector<double> ratios;
  for (std::size_t j = 1; j < increments.size(); ++j) {
    if (increments[j - 1] > 0.0) ratios.push_back(increments[j] / increments[j - 1]);
  }
  if (ratios.empty()) {
    out.cls = FClass::Convergent;  // integrand vanished: trivially summable
    return out;
  }
  std::nth_element(ratios.begin(), ratios.begin() + static_cast<long>(ratios.size() / 2),
                   ratios.end());
  out.tail_ratio = ratios[ratios.size() / 2];

  if (increments.back() <= quad_tol) {
    out.cls = FClass::Convergent;  // Cauchy within tolerance already
  } else if (out.tail_ratio <= 0.9) {
    out.cls = FClass::Convergent;  // geometric tail, finite limit
  } else if (out.tail_ratio >= 0.95) {
    out.cls = FClass::Divergent;  // non-vanishing (or growing) increments
  } else {
    out.cls = FClass::Inconclusive;
  }
  return out;
}

TransformSpec build_phi(const std::function<double(double)>& f, double k, FClass cls,
                        std::optional<std::function<double(double)>> f_prime) {
  if (!(k > 1.0)) throw std::invalid_argument("build_phi: k must be > 1");
  if (cls == FClass::Inconclusive)
    throw std::invalid_argument("build_phi: classification must be resolved first");
  TransformSpec t;
  t.f_ = f;
  t.k = k;
  t.cls = cls;
  t.f_prime_ = std::move(f_prime);
  if (cls == FClass::Convergent) {
    t.u0 = 0.0;
    t.domain_min = 0.0;
  } else {
    t.u0 = 1.0;
    t.domain_min = -kInf;
  }
  return t;
}

double TransformSpec::phi_inv(double u) const {
  if (cls == FClass::Convergent) {
    if (u < 0.0) throw std::domain_error("phi_inv: u must be >= 0 (convergent anchor)");
    return graded_integral(f_, k, 0.0, u);
  }
  if (!(u > 0.0)) throw std::domain_error("phi_inv: u must be > 0 (divergent anchor)");
  if (u >= 1.0) return graded_integral(f_, k, 1.0, u);
  return -graded_integral(f_, k, u, 1.0);
}

double TransformSpec::phi(double v) const {
  if (cls == FClass::Convergent && v < 0.0)
    throw std::domain_error("phi: v must be >= 0 (convergent anchor)");
  if (cls == FClass::Convergent && v == 0.0) return 0.0;

  // Bracket u with phi_inv(u) - v changing sign; phi_inv is increasing.
  auto g = [&](double u) { return phi_inv(u) - v; };
  double lo, hi;
  if (cls == FClass::Convergent) {
    lo = 0.0;
    hi = 1.0;
    while (g(hi) < 0.0) {
      hi *= 2.0;
      if (hi > 1e200) throw std::runtime_error("phi: bracket expansion failed (upper)");
    }
  } else {
    lo = 1.0;
    hi = 1.0;
    if (v >= 0.0) {
      while (g(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e200) throw std::runtime_error("phi: bracket expansion failed (upper)");
      }
    } else {
      while (g(lo) > 0.0) {
        lo *= 0.5;
        if (lo < 1e-280) throw std::runtime_error("phi: bracket expansion failed (lower)");
      }
      hi = std::max(1.0, 2.0 * lo);
    }
  }
  BisectOptions opt;
  opt.x_tol_rel = 1e-14;
  double u = bisect(g, lo, hi, opt);
  // Newton polish: d phi_inv / du = f(u)^{-1/(k-1)}.
  for (int it = 0; it < 4; ++it) {
    const double fu = f_(u);
    if (!(fu > 0.0)) break;
    const double deriv = std::pow(fu, -1.0 / (k - 1.0));
    if (!(deriv > 0.0) || !std::isfinite(deriv)) break;
    const double residual = phi_inv(u) - v;
    const double next = u - residual / deriv;
    if (!(next > 0.0) && cls == FClass::Divergent) break;
    if (next < 0.0 && cls == FClass::Convergent) break;
    u = next;
  }
  return u;
}

double TransformSpec::f_root_derivative(double s) const {
  if (f_prime_) {
    const double fs = f_(s);
    return std::pow(fs, 1.0 / (k - 1.0) - 1.0) * (*f_prime_)(s) / (k - 1.0);
  }
  const double h = 1e-6 * (1.0 + std::abs(s));
  const double lo = std::max(s - h, (cls == FClass::Convergent) ? 0.0 : s - h);
  const double hi = s + h;
  const double g_lo = std::pow(f_(lo), 1.0 / (k - 1.0));
  const double g_hi = std::pow(f_(hi), 1.0 / (k - 1.0));
  return (g_hi - g_lo) / (hi - lo);
}

double TransformSpec::Z(double v) const {
  if (v < domain_min) throw std::domain_error("Z: v below domain minimum");
  return f_root_derivative(phi(v));
}

SandwichReport sandwich_check(const std::function<double(double)>& f, double k, double omega1,
                              double omega2, const std::vector<double>& s_grid,
                              double slack_tol) {
  if (!(0.0 < omega1 && omega1 <= omega2))
    throw std::invalid_argument("sandwich_check: need 0 < omega1 <= omega2");
  SandwichReport rep;
  const double f0 = f(0.0);
  rep.omega = (f0 > 0.0) ? std::pow(f0, 1.0 / (k - 1.0)) : 0.0;
  rep.omega_zero_branch = (rep.omega == 0.0);
  rep.degenerate_z = (omega1 == omega2) && (omega1 == 0.0);
  for (double s : s_grid) {
    SandwichRow row;
    row.s = s;
    row.lower = std::pow(omega1 * s + rep.omega, k - 1.0);
    row.upper = std::pow(omega2 * s + rep.omega, k - 1.0);
    row.value = f(s);
    rep.rows.push_back(row);
    const double scale = std::max({1.0, row.lower, std::abs(row.value), row.upper});
    const double slack =
        std::max((row.lower - row.value) / scale, (row.value - row.upper) / scale);
    rep.worst_slack = std::max(rep.worst_slack, slack);
    if (slack > slack_tol) ++rep.violations;
  }
  return rep;
}

double PowerFamily::f(double s) const { return std::pow(s + a, alpha); }

double PowerFamily::phi(double v) const {
  if (exponential_branch()) {
    if (!(a > 0.0)) throw std::domain_error("PowerFamily: alpha = k-1 requires a > 0");
    return a * std::exp(v) - a;
  }
  if (!(alpha < k - 1.0)) throw std::domain_error("PowerFamily: requires alpha <= k-1");
  const double ck = c_k();
  return std::pow(ck * v + std::pow(a, ck), 1.0 / ck) - a;
}

std::function<double(double)> PowerFamily::as_function() const {
  const double al = alpha, aa = a;
  return [al, aa](double s) { return std::pow(s + aa, al); };
}

TransformedProblem transformed_problem(const ProblemParams& params, const TransformSpec& transform,
                                       double g_inf, double g_sup) {
  if (params.alpha != 0.0)
    throw std::invalid_argument("transformed_problem: original problem must have chi == 0");
  if (!(g_inf <= g_sup)) throw std::invalid_argument("transformed_problem: need inf g <= sup g");
  if (transform.cls == FClass::Convergent && g_inf < 0.0)
    throw std::domain_error("transformed_problem: data below phi's range [0, inf)");
  if (transform.cls == FClass::Divergent && !(g_inf > 0.0))
    throw std::domain_error("transformed_problem: data must be positive (divergent anchor)");

  TransformedProblem out{params, 0.0, 0.0, transform.cls};
  out.data_inf = transform.phi_inv(g_inf);
  out.data_sup = transform.phi_inv(g_sup);
  out.params.sigma = 0.0;
  const TransformSpec t = transform;  // captured copy keeps the result self-contained
  out.params.Z = ZSpec::custom([t](double v) { return std::max(0.0, t.Z(v)); },
                               transform.domain_min, "dnl_transform");
  return out;
}

}  // namespace parab
