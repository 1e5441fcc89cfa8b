#include "parab/comparison_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace parab {
namespace {

// Spatial operator F_i(u) = H(...) + chi(t)|u_r|^sigma at node i. The
// gradient entering the tangential block and the prefactor is one-sided
// (forward), the second derivative is central, and the Z and chi gradient
// magnitudes take the Godunov choice that keeps the update monotone.
double node_rhs(const std::vector<double>& u, int i, double h, double t,
                const ProblemParams& params, const Vec& /*e1*/) {
  // Scratch reused across calls; the hot loops run millions of node updates.
  static thread_local SymMatrix X = SymMatrix::zero(1);
  static thread_local Vec q;
  if (X.n() != params.n) X = SymMatrix::zero(params.n);
  q.assign(static_cast<std::size_t>(params.n), 0.0);

  const int n_nodes = static_cast<int>(u.size());
  const std::size_t si = static_cast<std::size_t>(i);
  const double u0 = u[si];
  const double chi_t = params.chi(t);

  if (i == 0) {
    // Center: Dw = 0, D^2 w = u_rr(0) I by symmetry (ghost u_{-1} = u_1).
    const double urr0 = 2.0 * (u[1] - u[0]) / (h * h);
    X.reset_zero();
    X.add_scaled_identity(urr0);
    const double hval = eval_H(params.op, q, X);
    const double god_up = std::max((u[1] - u[0]) / h, 0.0);
    const double god_dn = std::max((u[0] - u[1]) / h, 0.0);
    const double s = (chi_t >= 0.0) ? god_up : god_dn;
    const double chi_term = (params.sigma == 0.0) ? chi_t : chi_t * std::pow(s, params.sigma);
    return hval + chi_term;
  }
  if (i >= n_nodes - 1) return 0.0;  // Dirichlet boundary handled by caller

  const double um = u[si - 1];
  const double up = u[si + 1];
  const double r = h * i;
  const double ur_fwd = (up - u0) / h;
  const double urr = (up - 2.0 * u0 + um) / (h * h);
  const double god_up = std::max({(up - u0) / h, (um - u0) / h, 0.0});
  const double god_dn = std::max({(u0 - up) / h, (u0 - um) / h, 0.0});

  const double z = params.Z(u0);
  const double lam_t = ur_fwd / r;
  const double lam_e = urr + z * god_up * god_up;

  // lam_t I + (lam_e - lam_t) e1 (x) e1 = diag(lam_e, lam_t, ..., lam_t).
  X.reset_zero();
  X.add_scaled_identity(lam_t);
  X.set(0, 0, lam_e);
  q[0] = ur_fwd;
  const double hval = eval_H(params.op, q, X);

  const double s = (chi_t >= 0.0) ? god_up : god_dn;
  const double chi_term = (params.sigma == 0.0) ? chi_t : chi_t * std::pow(s, params.sigma);
  return hval + chi_term;
}

}  // namespace

RadialGridField RadialGridField::from_function(double R, double h,
                                               const std::function<double(double)>& f) {
  if (!(R > 0.0) || !(h > 0.0) || h > R)
    throw std::invalid_argument("RadialGridField: need 0 < h <= R");
  RadialGridField out;
  out.R = R;
  out.h = h;
  const int n = static_cast<int>(std::llround(R / h)) + 1;
  out.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = f(h * i);
  return out;
}

double lipschitz_estimate(const RadialGridField& f, const ProblemParams& params, int stride) {
  const Vec e1 = axis_vector(params.n, 0);
  const int n = f.nodes();
  double lip = 0.0;
  std::vector<double> u = f.values;
  const double base_delta = 1e-6;
  auto probe_row = [&](int i) {
    const double f0 = node_rhs(u, i, f.h, f.t, params, e1);
    double row = 0.0;
    for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j) {
      const std::size_t sj = static_cast<std::size_t>(j);
      const double delta = base_delta * (1.0 + std::abs(u[sj]));
      const double saved = u[sj];
      u[sj] = saved + delta;
      const double f1 = node_rhs(u, i, f.h, f.t, params, e1);
      u[sj] = saved;
      row += std::abs(f1 - f0) / delta;
    }
    lip = std::max(lip, row);
  };
  // Always probe the cells beside both boundaries: the lateral cell carries
  // the steepest gradients in the growth experiments.
  if (n >= 3) {
    probe_row(1);
    probe_row(n - 2);
  }
  for (int i = 1; i < n - 1; i += std::max(1, stride)) probe_row(i);
  // Center node too (couples to u_1).
  if (n >= 2) {
    const double f0 = node_rhs(u, 0, f.h, f.t, params, e1);
    for (int j = 0; j <= 1; ++j) {
      const std::size_t sj = static_cast<std::size_t>(j);
      const double delta = base_delta * (1.0 + std::abs(u[sj]));
      const double saved = u[sj];
      u[sj] = saved + delta;
      const double f1 = node_rhs(u, 0, f.h, f.t, params, e1);
      u[sj] = saved;
      lip = std::max(lip, std::abs(f1 - f0) / delta);
    }
  }
  return lip;
}

double suggest_dt(const RadialGridField& f, const ProblemParams& params,
                  const SchemeConfig& cfg) {
  const double lip = lipschitz_estimate(f, params, cfg.lipschitz_stride);
  if (lip <= 0.0) return cfg.dt;
  return std::min(cfg.dt, cfg.cfl_safety / lip);
}

RadialGridField step(const RadialGridField& f, const ProblemParams& params,
                     const SchemeConfig& cfg, double dt, const BoundaryFn& boundary, Exec exec) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  const double lip = lipschitz_estimate(f, params, cfg.lipschitz_stride);
  if (lip > 0.0 && dt > cfg.cfl_safety / lip)
    throw std::runtime_error("step: CFL violation, dt = " + std::to_string(dt) +
                             " > cfl_safety/Lip = " + std::to_string(cfg.cfl_safety / lip));

  const Vec e1 = axis_vector(params.n, 0);
  const int n = f.nodes();
  RadialGridField out = f;
  out.t = f.t + dt;

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n - 1; ++i)
      out.values[static_cast<std::size_t>(i)] =
          f.values[static_cast<std::size_t>(i)] + dt * node_rhs(f.values, i, f.h, f.t, params, e1);
  } else {
    for (int i = 0; i < n - 1; ++i)
      out.values[static_cast<std::size_t>(i)] =
          f.values[static_cast<std::size_t>(i)] + dt * node_rhs(f.values, i, f.h, f.t, params, e1);
  }
  out.values[static_cast<std::size_t>(n - 1)] = boundary(out.t);

  for (int i = 0; i < n; ++i)
    if (!std::isfinite(out.values[static_cast<std::size_t>(i)]))
      throw std::runtime_error("step: non-finite value at node " + std::to_string(i) +
                               ", t = " + std::to_string(out.t));
  return out;
}

RunResult run(RadialGridField initial, const ProblemParams& params, const SchemeConfig& cfg,
              const BoundaryFn& boundary, int snapshot_count, Exec exec) {
  RunResult res;
  res.dt_min = std::numeric_limits<double>::infinity();
  res.dt_max = 0.0;
  RadialGridField u = std::move(initial);
  u.values.back() = boundary(u.t);
  res.center_trace.emplace_back(u.t, u.values.front());

  double next_snapshot = (snapshot_count > 0) ? cfg.t_end / snapshot_count : 2.0 * cfg.t_end;
  while (u.t < cfg.t_end - 1e-14) {
    double dt = suggest_dt(u, params, cfg);
    dt = std::min(dt, cfg.t_end - u.t);
    u = step(u, params, cfg, dt, boundary, exec);
    ++res.steps;
    res.dt_min = std::min(res.dt_min, dt);
    res.dt_max = std::max(res.dt_max, dt);
    res.center_trace.emplace_back(u.t, u.values.front());
    if (snapshot_count > 0 && u.t >= next_snapshot - 1e-14) {
      res.snapshots.push_back(u);
      next_snapshot += cfg.t_end / snapshot_count;
    }
    if (res.steps > 50'000'000)
      throw std::runtime_error("run: step budget exceeded (CFL collapse?)");
  }
  res.final_field = std::move(u);
  return res;
}

ComparisonReport run_against_barrier(RadialGridField initial, const ProblemParams& params,
                                     const SchemeConfig& cfg, const BoundaryFn& boundary,
                                     const BarrierSpec& barrier, double offset, double tol,
                                     Exec exec) {
  ComparisonReport rep;
  RadialGridField u = std::move(initial);
  u.values.back() = boundary(u.t);

  auto W = [&](double r, double t) {
    return offset + barrier.value(std::max(r, 0.0), t);
  };

  // Parabolic boundary precondition: t = 0 everywhere and the lateral node.
  for (int i = 0; i < u.nodes(); ++i) {
    if (u.values[static_cast<std::size_t>(i)] > W(u.r(i), 0.0) + 1e-12) {
      rep.precondition_ok = false;
      rep.precondition_note =
          "initial data exceeds barrier at r = " + std::to_string(u.r(i));
      break;
    }
  }

  auto check_field = [&](const RadialGridField& field) {
    for (int i = 0; i < field.nodes(); ++i) {
      const double gap = field.values[static_cast<std::size_t>(i)] - W(field.r(i), field.t) - tol;
      if (gap > 0.0) {
        ++rep.violations;
        if (gap > rep.worst_violation) {
          rep.worst_violation = gap;
          rep.worst_r = field.r(i);
          rep.worst_t = field.t;
        }
      }
    }
  };

  check_field(u);
  std::size_t steps = 0;
  while (u.t < cfg.t_end - 1e-14 && rep.precondition_ok) {
    double dt = suggest_dt(u, params, cfg);
    dt = std::min(dt, cfg.t_end - u.t);
    u = step(u, params, cfg, dt, boundary, exec);
    // Lateral boundary must stay dominated, else the comparison premise broke.
    if (u.values.back() > W(u.R, u.t) + 1e-12) {
      rep.precondition_ok = false;
      rep.precondition_note = "lateral data exceeds barrier at t = " + std::to_string(u.t);
      break;
    }
    check_field(u);
    if (++steps > 50'000'000) throw std::runtime_error("run_against_barrier: step budget exceeded");
  }
  rep.passed = rep.precondition_ok && rep.violations == 0;
  return rep;
}

PairReport compare_pair(RadialGridField u0, RadialGridField v0, const ProblemParams& params,
                        const SchemeConfig& cfg, const BoundaryFn& boundary_u,
                        const BoundaryFn& boundary_v, double fp_tol, Exec exec) {
  if (u0.nodes() != v0.nodes()) throw std::invalid_argument("compare_pair: grid mismatch");
  PairReport rep;
  RadialGridField u = std::move(u0);
  RadialGridField v = std::move(v0);
  u.values.back() = boundary_u(u.t);
  v.values.back() = boundary_v(v.t);

  auto scan = [&]() {
    for (int i = 0; i < u.nodes(); ++i) {
      const double gap = u.values[static_cast<std::size_t>(i)] - v.values[static_cast<std::size_t>(i)];
      rep.worst_gap = std::max(rep.worst_gap, gap);
      const double scale = 1.0 + std::abs(u.values[static_cast<std::size_t>(i)]) +
                           std::abs(v.values[static_cast<std::size_t>(i)]);
      if (gap > fp_tol * scale) ++rep.violations;
    }
  };

  scan();
  while (u.t < cfg.t_end - 1e-14) {
    double dt = std::min(suggest_dt(u, params, cfg), suggest_dt(v, params, cfg));
    dt = std::min(dt, cfg.t_end - u.t);
    u = step(u, params, cfg, dt, boundary_u, exec);
    v = step(v, params, cfg, dt, boundary_v, exec);
    ++rep.steps;
    scan();
    if (rep.steps > 50'000'000) throw std::runtime_error("compare_pair: step budget exceeded");
  }
  return rep;
}

PLReport pl_experiment(const ProblemParams& params, double growth_beta,
                       const std::vector<double>& R_list, const PLOptions& opt, Exec exec) {
  PLReport rep;
  rep.note = "boundary-data growth encodes the solution growth condition (modeling choice); "
             "envelope R^beta/log(1+R)";
  const double alpha = params.alpha;
  for (double R : R_list) {
    const double bval = std::pow(R, growth_beta) / std::log(1.0 + R);
    RadialGridField u0 = RadialGridField::from_function(R, opt.h, [&](double r) {
      const double c = std::cos(0.5 * M_PI * r / R);
      return opt.nu * c * c;
    });
    SchemeConfig cfg;
    cfg.dt = opt.dt_cap;
    cfg.cfl_safety = opt.cfl_safety;
    cfg.t_end = params.T;
    const RunResult res = run(std::move(u0), params, cfg,
                              [bval](double) { return bval; }, 0, exec);
    PLRow row;
    row.R = R;
    row.boundary_value = bval;
    row.center_at_T = res.final_field.values.front();
    row.sup_center = row.center_at_T;
    for (const auto& [t, uc] : res.center_trace) row.sup_center = std::max(row.sup_center, uc);
    row.bound = opt.nu + alpha * params.T;
    row.margin = row.center_at_T - row.bound;
    rep.rows.push_back(row);
  }
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].margin > rep.rows[i - 1].margin + 1e-9)
      rep.margins_nonincreasing = false;
  return rep;
}

}  // namespace parab
