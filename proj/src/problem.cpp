#include "parab/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace parab {

double ZSpec::operator()(double s) const {
  if (s < domain_min)
    throw std::domain_error("Z: argument " + std::to_string(s) + " below domain minimum " +
                            std::to_string(domain_min));
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::ZeroAbove:
      return std::max(0.0, s0 - s);
    case Kind::PowerDecay: {
      const double floor = std::isfinite(domain_min) ? domain_min : 0.0;
      return 1.0 / (1.0 + std::max(s - floor, 0.0));
    }
    case Kind::Custom:
      return fn(s);
  }
  throw std::logic_error("Z: unknown kind");
}

ZSpec ZSpec::zero() { return ZSpec{}; }

ZSpec ZSpec::zero_above(double s0, double domain_min) {
  ZSpec z;
  z.kind = Kind::ZeroAbove;
  z.s0 = s0;
  z.domain_min = domain_min;
  z.label = "zero_above(" + std::to_string(s0) + ")";
  return z;
}

ZSpec ZSpec::power_decay(double domain_min) {
  ZSpec z;
  z.kind = Kind::PowerDecay;
  z.domain_min = domain_min;
  z.label = "power_decay";
  return z;
}

ZSpec ZSpec::custom(std::function<double(double)> fn, double domain_min, std::string label) {
  ZSpec z;
  z.kind = Kind::Custom;
  z.fn = std::move(fn);
  z.domain_min = domain_min;
  z.label = std::move(label);
  return z;
}

double ChiSpec::operator()(double t) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Const:
      return value;
    case Kind::Sin:
      return value * std::sin(M_PI * t / T);
    case Kind::Custom:
      return fn(t);
  }
  throw std::logic_error("chi: unknown kind");
}

double ChiSpec::sup_abs() const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Const:
    case Kind::Sin:
      return std::abs(value);
    case Kind::Custom:
      return custom_sup_abs;
  }
  throw std::logic_error("chi: unknown kind");
}

double ChiSpec::sup() const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Const:
      return value;
    case Kind::Sin:
      return std::max(0.0, value);
    case Kind::Custom:
      return custom_sup;
  }
  throw std::logic_error("chi: unknown kind");
}

double ChiSpec::inf() const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Const:
      return value;
    case Kind::Sin:
      return std::min(0.0, value);
    case Kind::Custom:
      return custom_inf;
  }
  throw std::logic_error("chi: unknown kind");
}

ChiSpec ChiSpec::zero(double T) {
  ChiSpec c;
  c.kind = Kind::Zero;
  c.T = T;
  return c;
}

ChiSpec ChiSpec::constant(double value, double T) {
  ChiSpec c;
  c.kind = Kind::Const;
  c.value = value;
  c.T = T;
  return c;
}

ChiSpec ChiSpec::sine(double amplitude, double T) {
  ChiSpec c;
  c.kind = Kind::Sin;
  c.value = amplitude;
  c.T = T;
  return c;
}

ChiSpec ChiSpec::custom(std::function<double(double)> fn, double T, double sup_abs, double sup,
                        double inf) {
  ChiSpec c;
  c.kind = Kind::Custom;
  c.fn = std::move(fn);
  c.T = T;
  c.custom_sup_abs = sup_abs;
  c.custom_sup = sup;
  c.custom_inf = inf;
  return c;
}

double ProblemParams::gamma_star() const {
  const double gamma = op.gamma();
  if (!(gamma > 2.0)) throw std::domain_error("gamma_star: requires k > 1 (gamma > 2)");
  return gamma / (gamma - 2.0);
}

double ProblemParams::sigma_star() const {
  if (!(sigma > 1.0)) throw std::domain_error("sigma_star: requires sigma > 1");
  return sigma / (sigma - 1.0);
}

ProblemParams ProblemParams::make(OperatorSpec op, double sigma, double T, ChiSpec chi, ZSpec Z,
                                  Vec z_center) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("ProblemParams: sigma must be >= 0");
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("ProblemParams: need 0 < T < inf");
  ProblemParams params;
  params.n = op.n;
  params.op = std::move(op);
  params.sigma = sigma;
  params.T = T;
  params.alpha = chi.sup_abs();
  if (chi.sup() <= 0.0 && chi.sup_abs() > 0.0 && chi.sup() < 0.0)
    params.alpha_hat_neg = chi.sup();
  if (chi.inf() >= 0.0 && chi.sup_abs() > 0.0 && chi.inf() > 0.0)
    params.alpha_hat_pos = chi.inf();
  params.chi = std::move(chi);
  params.Z = std::move(Z);
  params.z_center = std::move(z_center);
  if (params.z_center.empty()) params.z_center = Vec(static_cast<std::size_t>(params.n), 0.0);
  if (static_cast<int>(params.z_center.size()) != params.n)
    throw std::invalid_argument("ProblemParams: z_center dimension mismatch");

  const SpectralReport spectral =
      estimate_lambda_sup_inf(params.op, {-1e3, 1e3}, 201, 64);
  if (!spectral.lambda_sup.finite)
    throw std::invalid_argument("ProblemParams: Lambda^sup not finite for " + params.op.name());
  params.M = std::max(spectral.lambda_sup.value, 1.0);
  if (spectral.lambda_inf.finite) params.lambda_inf = spectral.lambda_inf.value;
  return params;
}

}  // namespace parab
