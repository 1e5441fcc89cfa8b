#ifndef PARAB_COMPARISON_LAB_HPP
#define PARAB_COMPARISON_LAB_HPP

#include <functional>
#include <string>
#include <vector>

#include "parab/barrier_factory.hpp"
#include "parab/problem.hpp"

namespace parab {

// Radially symmetric field on [0, R], nodes r_i = i h. Node 0 is the center
// (symmetric ghost), the last node carries the Dirichlet lateral value.
struct RadialGridField {
  double R = 1.0;
  double h = 0.1;
  double t = 0.0;
  std::vector<double> values;

  static RadialGridField from_function(double R, double h,
                                       const std::function<double(double)>& f);
  int nodes() const { return static_cast<int>(values.size()); }
  double r(int i) const { return h * i; }
};

struct SchemeConfig {
  double dt = 1e-3;          // upper bound; runs shrink it to the CFL limit
  double cfl_safety = 0.5;   // in (0,1)
  double t_end = 1.0;        // <= params.T
  int lipschitz_stride = 8;  // node stride for the sampled Lipschitz estimate
};

using BoundaryFn = std::function<double(double)>;  // lateral value at time t

// Sampled Lipschitz constant of the discrete spatial operator (max row sum
// of |dF_i/du_j| over sampled nodes, numeric perturbations).
double lipschitz_estimate(const RadialGridField& f, const ProblemParams& params, int stride = 8);

double suggest_dt(const RadialGridField& f, const ProblemParams& params,
                  const SchemeConfig& cfg);

// One explicit Euler step. The first-order radial transport block is
// one-sided and the |u_r|^sigma term is upwinded by the sign of chi so the
// update is monotone for the built-in operators; the e(x)e / I split is
// evaluated through eval_H on the 1-D reduction. Throws on CFL violation
// (dt > cfl_safety / Lipschitz) and on non-finite values (with step context).
RadialGridField step(const RadialGridField& f, const ProblemParams& params,
                     const SchemeConfig& cfg, double dt, const BoundaryFn& boundary,
                     Exec exec = Exec::Parallel);

struct RunResult {
  RadialGridField final_field;
  double center_sup = 0.0;  // max over all steps of u(z, t)
  std::vector<std::pair<double, double>> center_trace;  // at snapshot cadence
  std::size_t steps = 0;
  double dt_min = 0.0, dt_max = 0.0;
  std::vector<RadialGridField> snapshots;
};

RunResult run(RadialGridField initial, const ProblemParams& params, const SchemeConfig& cfg,
              const BoundaryFn& boundary, int snapshot_count = 0, Exec exec = Exec::Parallel);

struct ComparisonReport {
  bool precondition_ok = true;  // u <= W on the parabolic boundary
  std::string precondition_note;
  std::size_t violations = 0;
  double worst_violation = 0.0;  // max over checked nodes/steps of u - W - tol
  double worst_r = 0.0, worst_t = 0.0;
  bool passed = false;
};

// Runs u forward and checks u <= offset + W at every node and step within
// tol (discrete comparison against a certified super-solution). The barrier
// is evaluated through BarrierSpec; offset is the nu shift of W = nu + w.
ComparisonReport run_against_barrier(RadialGridField initial, const ProblemParams& params,
                                     const SchemeConfig& cfg, const BoundaryFn& boundary,
                                     const BarrierSpec& barrier, double offset, double tol,
                                     Exec exec = Exec::Parallel);

struct PairReport {
  std::size_t violations = 0;
  double worst_gap = 0.0;  // max over steps/nodes of u - v (should stay <= ~0)
  std::size_t steps = 0;
};

// Steps two fields in lockstep with a shared dt and reports ordering
// violations beyond the floating-point tolerance.
PairReport compare_pair(RadialGridField u0, RadialGridField v0, const ProblemParams& params,
                        const SchemeConfig& cfg, const BoundaryFn& boundary_u,
                        const BoundaryFn& boundary_v, double fp_tol = 1e-11,
                        Exec exec = Exec::Parallel);

struct PLRow {
  double R = 0.0;
  double boundary_value = 0.0;
  double sup_center = 0.0;   // max_t u(z, t)
  double center_at_T = 0.0;
  double bound = 0.0;        // nu + alpha T
  double margin = 0.0;       // center_at_T - bound
};

struct PLReport {
  std::vector<PLRow> rows;
  bool margins_nonincreasing = true;
  std::string note;
};

struct PLOptions {
  double nu = 1.0;      // sup of the initial data
  double h = 0.25;      // radial step
  double cfl_safety = 0.5;
  double dt_cap = 1e-2;
  int snapshot_count = 32;
};

// Growth experiment: lateral data of size R^beta / log(1+R) (a strict o(R^beta)
// envelope), initial bump below nu, center value tracked against nu + alpha t.
// The translation boundary-data growth => solution growth is a modeling
// choice; reports carry that label.
PLReport pl_experiment(const ProblemParams& params, double growth_beta,
                       const std::vector<double>& R_list, const PLOptions& opt = {},
                       Exec exec = Exec::Parallel);

}  // namespace parab

#endif
