#include "parab/residual_certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parab/sampling.hpp"

namespace parab {
namespace {

struct ResidualParts {
  double value = 0.0;
  double fp_scale = 0.0;  // |H term| + |chi term| + |w_t|, for rounding-aware slack
};

ResidualParts residual_radial_parts(const ProblemParams& params, const BarrierSpec& w, double r,
                                    double t) {
  if (!(r > 0.0))
    throw std::domain_error("residual_radial: r must be > 0 (viscosity point excluded)");
  const double wv = w.value(r, t);
  if (wv < params.Z.domain_min)
    throw std::domain_error("residual_radial: barrier value " + std::to_string(wv) +
                            " leaves Z domain");
  const double z = params.Z(wv);
  const double w_t = w.dt(r, t);
  const double w_r = w.dr(r, t);
  const double w_rr = w.drr(r, t);
  const double k = params.op.k();
  const Vec e1 = axis_vector(params.n, 0);

  double h_term;
  if (w_r == 0.0) {
    // Unfactored call: Dw = 0, D^2 w = w_rr e(x)e (the (w_r/r) block vanishes).
    SymMatrix X = SymMatrix::zero(params.n);
    X.add_scaled_rank_one(w_rr, e1);
    h_term = eval_H(params.op, Vec(static_cast<std::size_t>(params.n), 0.0), X);
  } else if (w_r > 0.0) {
    const double coeff = r * w_rr / w_r - 1.0 + r * w_r * z;
    SymMatrix X = SymMatrix::identity(params.n);
    X.add_scaled_rank_one(coeff, e1);
    h_term = std::pow(w_r, k) / r * eval_H(params.op, e1, X);
  } else {
    const double coeff = r * std::abs(w_r) * z + 1.0 - r * w_rr / w_r;
    SymMatrix X = SymMatrix::identity(params.n);
    X.add_scaled_identity(-2.0);
    X.add_scaled_rank_one(coeff, e1);
    h_term = std::pow(std::abs(w_r), k) / r * eval_H(params.op, e1, X);
  }

  // sigma = 0 convention: chi |Dw|^0 is chi identically, including Dw = 0.
  const double chi_term =
      (params.sigma == 0.0) ? w.chi_bound
                            : w.chi_bound * std::pow(std::abs(w_r), params.sigma);

  ResidualParts out;
  out.value = h_term + chi_term - w_t;
  out.fp_scale = std::abs(h_term) + std::abs(chi_term) + std::abs(w_t);
  return out;
}

}  // namespace

double residual_radial(const ProblemParams& params, const BarrierSpec& barrier, double r,
                       double t) {
  return residual_radial_parts(params, barrier, r, t).value;
}

double residual_full(const ProblemParams& params, const BarrierSpec& barrier, const Vec& x,
                     double t) {
  if (static_cast<int>(x.size()) != params.n)
    throw std::invalid_argument("residual_full: x dimension mismatch");
  Vec diff(x);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= params.z_center[i];
  const double r = norm2(diff);
  if (!(r > 0.0)) throw std::domain_error("residual_full: x must differ from z_center");
  const Vec e = scaled(diff, 1.0 / r);

  const double wv = barrier.value(r, t);
  if (wv < params.Z.domain_min)
    throw std::domain_error("residual_full: barrier value leaves Z domain");
  const double z = params.Z(wv);
  const double w_t = barrier.dt(r, t);
  const double w_r = barrier.dr(r, t);
  const double w_rr = barrier.drr(r, t);

  const Vec Dw = scaled(e, w_r);
  SymMatrix X = SymMatrix::zero(params.n);
  X.add_scaled_identity(w_r / r);
  X.add_scaled_rank_one(w_rr - w_r / r, e);
  X.add_scaled_rank_one(z * w_r * w_r, e);

  const double h_term = eval_H(params.op, Dw, X);
  const double chi_term =
      (params.sigma == 0.0) ? barrier.chi_bound
                            : barrier.chi_bound * std::pow(std::abs(w_r), params.sigma);
  return h_term + chi_term - w_t;
}

CertificateReport certify(const ProblemParams& params, const BarrierSpec& barrier,
                          const CertifyOptions& opt) {
  if (opt.n_samples < 1) throw std::invalid_argument("certify: n_samples >= 1");
  CertificateReport rep;
  rep.case_id = barrier.case_id;
  rep.n_samples = opt.n_samples;
  rep.slack = opt.slack;

  rep.tail = make_tail_check(params, barrier, opt.r_probe);
  rep.tail_ok = true;
  if (rep.tail.applicable) {
    if (!rep.tail.monomials.empty())
      rep.tail_ok = monomials_nonpositive(rep.tail.monomials, rep.tail.r0);
    for (const auto& cond : rep.tail.conditions)
      rep.tail_ok = rep.tail_ok && cond.lhs <= cond.rhs + 1e-9 * (1.0 + std::abs(cond.lhs) +
                                                                  std::abs(cond.rhs));
  }

  // Sampling window: up to the tail start for all-space regions (so tail and
  // samples meet), inside the ball otherwise; exp shapes capped to stay
  // finite in double arithmetic.
  double r_hi;
  if (barrier.region.all_space) {
    r_hi = std::max(opt.r_probe, rep.tail.r0 > 0.0 ? rep.tail.r0 : opt.r_probe);
  } else {
    r_hi = barrier.region.R * (1.0 - 1e-3);
  }
  r_hi = std::min(r_hi, barrier.r_cap_numeric());
  rep.sample_r_max = r_hi;
  const double r_lo = r_hi * 1e-6;
  const double T = params.T;

  const std::size_t n = opt.n_samples;
  const double sign = (barrier.direction == Direction::Super) ? 1.0 : -1.0;

  std::vector<double> residuals(n);
  std::vector<double> rs(n), ts(n);
  std::vector<double> scales(n);

  auto sample_at = [&](std::size_t i) {
    double r, t;
    if (opt.sampler == Sampler::Grid) {
      const std::size_t nr = static_cast<std::size_t>(std::sqrt(static_cast<double>(n))) + 1;
      const std::size_t ir = i % nr;
      const std::size_t it = i / nr;
      const std::size_t nt = n / nr + 1;
      const double fr = (static_cast<double>(ir) + 0.5) / static_cast<double>(nr);
      const double ft = (static_cast<double>(it) + 0.5) / static_cast<double>(nt);
      r = r_lo * std::pow(r_hi / r_lo, fr);
      t = T * std::min(1.0 - 1e-9, std::max(1e-9, ft));
    } else {
      const double u1 = halton(i + 1, 2);
      const double u2 = halton(i + 1, 3);
      r = r_lo * std::pow(r_hi / r_lo, u1);  // log-uniform across the decades
      t = T * std::min(1.0 - 1e-9, std::max(1e-9, u2));
    }
    const ResidualParts parts = residual_radial_parts(params, barrier, r, t);
    rs[i] = r;
    ts[i] = t;
    residuals[i] = parts.value;
    scales[i] = parts.fp_scale;
  };

  if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      sample_at(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) sample_at(i);
  }

  // Serial reduction keeps the report deterministic regardless of exec mode.
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t worst_i = 0;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double oriented = sign * residuals[i];  // positive = adverse
    const double threshold = opt.slack * (1.0 + std::abs(barrier.a) + std::abs(barrier.b) +
                                          scales[i]);
    if (oriented > threshold) ++violations;
    if (oriented > worst) {
      worst = oriented;
      worst_i = i;
    }
  }
  rep.violations = violations;
  rep.worst_residual = residuals[worst_i];
  rep.worst_r = rs[worst_i];
  rep.worst_t = ts[worst_i];
  rep.passed = (violations == 0) && rep.tail_ok;

  if (opt.keep_samples) {
    std::size_t stride = opt.keep_stride;
    if (stride == 0) stride = std::max<std::size_t>(1, n / 1000);
    for (std::size_t i = 0; i < n; i += stride)
      rep.samples.push_back(ResidualSample{rs[i], ts[i], residuals[i]});
  }
  return rep;
}

AgreementReport radial_full_agreement(const ProblemParams& params, const BarrierSpec& barrier,
                                      std::size_t count, std::uint64_t seed, double tol) {
  AgreementReport rep;
  rep.count = count;
  std::mt19937_64 rng = substream(seed, 0x5add);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double r_hi = barrier.region.all_space ? 10.0 : barrier.region.R * (1.0 - 1e-3);
  r_hi = std::min(r_hi, barrier.r_cap_numeric());

  for (std::size_t i = 0; i < count; ++i) {
    Vec dir(static_cast<std::size_t>(params.n));
    double nn = 0.0;
    do {
      for (double& d : dir) d = gauss(rng);
      nn = norm2(dir);
    } while (nn < 1e-12);
    const double r = r_hi * std::max(1e-4, unit(rng));
    Vec x = params.z_center;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += dir[j] / nn * r;
    const double t = params.T * std::min(1.0 - 1e-9, std::max(1e-9, unit(rng)));

    const double full = residual_full(params, barrier, x, t);
    // |x - z| reconstructed from x loses a few ulps; evaluate the radial path
    // at the same reconstructed radius.
    Vec diff(x);
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= params.z_center[j];
    const double rr = norm2(diff);
    const double radial = residual_radial(params, barrier, rr, t);
    const double gap = std::abs(full - radial) / (1.0 + std::abs(radial));
    rep.worst_rel_gap = std::max(rep.worst_rel_gap, gap);
  }
  rep.passed = rep.worst_rel_gap <= tol;
  return rep;
}

}  // namespace parab
