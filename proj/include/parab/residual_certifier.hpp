#ifndef PARAB_RESIDUAL_CERTIFIER_HPP
#define PARAB_RESIDUAL_CERTIFIER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "parab/barrier_factory.hpp"

namespace parab {

struct ResidualSample {
  double r = 0.0, t = 0.0;
  double residual = 0.0;
};

struct CertificateReport {
  std::string case_id;
  std::size_t n_samples = 0;
  double worst_residual = 0.0;  // signed; most adverse for the direction
  double worst_r = 0.0, worst_t = 0.0;
  std::size_t violations = 0;
  double slack = 0.0;  // base slack factor used
  bool passed = false;
  bool tail_ok = false;
  TailCheck tail;
  double sample_r_max = 0.0;
  std::vector<ResidualSample> samples;  // kept only when requested
};

// Parabolic residual P_sigma at radius r, time t via the factored radial
// reduction; chi(t) is replaced by the barrier's adversarial bound so a
// certified sign is uniform over admissible chi. r = 0 is excluded (the
// viscosity point the sampling cannot test).
double residual_radial(const ProblemParams& params, const BarrierSpec& barrier, double r,
                       double t);

// Full n-dimensional assembly at x != z_center: Dw = w_r e, the radial
// Hessian split, the Z(w) Dw (x) Dw correction, then eval_H directly.
double residual_full(const ProblemParams& params, const BarrierSpec& barrier, const Vec& x,
                     double t);

enum class Sampler { Grid, LowDiscrepancy };

struct CertifyOptions {
  Sampler sampler = Sampler::LowDiscrepancy;
  std::size_t n_samples = 100000;
  double slack = 1e-9;  // scaled by 1 + |a| + b + local fp magnitude
  double r_probe = 50.0;
  Exec exec = Exec::Parallel;
  bool keep_samples = false;
  std::size_t keep_stride = 0;  // 0: derive from n_samples (<= ~1000 rows)
};

// Samples the residual over the barrier's region (all-space cases up to the
// tail-check start, exp shapes capped to their overflow-safe radius) and
// asserts residual <= slack (super) resp. >= -slack (sub), then evaluates
// the analytic tail evidence so certification is not merely finite-window.
CertificateReport certify(const ProblemParams& params, const BarrierSpec& barrier,
                          const CertifyOptions& opt = {});

struct AgreementReport {
  double worst_rel_gap = 0.0;
  std::size_t count = 0;
  bool passed = false;
};

// Radial-reduction identity check: |residual_full - residual_radial| at
// random (x, t) within tol*(1 + |residual|).
AgreementReport radial_full_agreement(const ProblemParams& params, const BarrierSpec& barrier,
                                      std::size_t count, std::uint64_t seed, double tol = 1e-8);

}  // namespace parab

#endif
