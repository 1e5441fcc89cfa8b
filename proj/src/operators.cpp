#include "parab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parab/sampling.hpp"

namespace parab {
namespace {

// |q|^p with the p = 0 convention |q|^0 = 1 even at q = 0, so the k1 = 0
// reduction H(q, X) = H(X) holds everywhere.
double grad_prefactor(double qnorm, double p) {
  if (p == 0.0) return 1.0;
  return std::pow(qnorm, p);
}

void validate_args(const OperatorSpec& op, const Vec& q, const SymMatrix& X) {
  if (static_cast<int>(q.size()) != op.n || X.n() != op.n)
    throw std::invalid_argument("eval_H: dimension mismatch (op.n=" + std::to_string(op.n) + ")");
  if (!all_finite(q) || !X.finite()) throw std::invalid_argument("eval_H: non-finite entries");
}

}  // namespace

std::string OperatorSpec::name() const {
  switch (kind) {
    case OperatorKind::GradTraceMinusInfinity:
      return "grad_trace_minus_infinity(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
    case OperatorKind::TruncatedEigenSum:
      return "truncated_eigen_sum(p=" + std::to_string(p) + ",m=" + std::to_string(m) +
             ",n=" + std::to_string(n) + ")";
    case OperatorKind::Custom:
      return name_tag;
  }
  return "?";
}

OperatorSpec OperatorSpec::grad_trace_minus_infinity(double p, int n) {
  if (p < 0.0) throw std::invalid_argument("grad_trace_minus_infinity: p must be >= 0");
  if (n < 2) throw std::invalid_argument("grad_trace_minus_infinity: n must be >= 2");
  OperatorSpec op;
  op.kind = OperatorKind::GradTraceMinusInfinity;
  op.n = n;
  op.p = p;
  op.k1 = p + 2.0;
  return op;
}

OperatorSpec OperatorSpec::truncated_eigen_sum(double p, int m, int n) {
  if (p < 0.0) throw std::invalid_argument("truncated_eigen_sum: p must be >= 0");
  if (!(2 <= m && m < n)) throw std::invalid_argument("truncated_eigen_sum: need 2 <= m < n");
  OperatorSpec op;
  op.kind = OperatorKind::TruncatedEigenSum;
  op.n = n;
  op.p = p;
  op.m = m;
  op.k1 = p;
  return op;
}

OperatorSpec OperatorSpec::custom(std::string name, double k1, int n, CustomEvaluator eval) {
  if (k1 < 0.0) throw std::invalid_argument("custom operator: k1 must be >= 0");
  OperatorSpec op;
  op.kind = OperatorKind::Custom;
  op.n = n;
  op.k1 = k1;
  op.name_tag = std::move(name);
  op.evaluator = std::move(eval);
  return op;
}

OperatorSpec OperatorSpec::middle_eigenvalue(int n) {
  if (n < 3) throw std::invalid_argument("middle_eigenvalue: n must be >= 3");
  return custom("middle_eigenvalue(n=" + std::to_string(n) + ")", 0.0, n,
                [](const Vec&, const SymMatrix& X) {
                  Vec mu = X.eigenvalues_descending();
                  double s = 0.0;
                  for (std::size_t i = 1; i + 1 < mu.size(); ++i) s += mu[i];
                  return s;
                });
}

double eval_H(const OperatorSpec& op, const Vec& q, const SymMatrix& X) {
  validate_args(op, q, X);
  switch (op.kind) {
    case OperatorKind::GradTraceMinusInfinity: {
      const double q2 = dot(q, q);
      return grad_prefactor(std::sqrt(q2), op.p) * (q2 * X.trace() - X.quad_form(q));
    }
    case OperatorKind::TruncatedEigenSum: {
      const Vec mu = X.eigenvalues_descending();
      double s = 0.0;
      for (int i = op.m; i <= op.n; ++i) s += mu[static_cast<std::size_t>(i - 1)];
      return grad_prefactor(norm2(q), op.p) * s;
    }
    case OperatorKind::Custom:
      return op.evaluator(q, X);
  }
  throw std::logic_error("eval_H: unknown kind");
}

LambdaExtremes lambda_extremes(const OperatorSpec& op, double lambda, int sphere_samples) {
  if (sphere_samples < 1) throw std::invalid_argument("lambda_extremes: sphere_samples >= 1");
  const auto dirs = unit_sphere_directions(op.n, sphere_samples);
  double lo_min = 0.0, lo_max = 0.0, hi_min = 0.0, hi_max = 0.0;
  bool first = true;
  for (const Vec& e : dirs) {
    SymMatrix minus = SymMatrix::identity(op.n);
    minus.add_scaled_identity(-2.0);  // -I
    minus.add_scaled_rank_one(lambda, e);
    SymMatrix plus = SymMatrix::identity(op.n);
    plus.add_scaled_rank_one(lambda, e);
    const double h_minus = eval_H(op, e, minus);
    const double h_plus = eval_H(op, e, plus);
    if (first) {
      lo_min = lo_max = h_minus;
      hi_min = hi_max = h_plus;
      first = false;
    } else {
      lo_min = std::min(lo_min, h_minus);
      lo_max = std::max(lo_max, h_minus);
      hi_min = std::min(hi_min, h_plus);
      hi_max = std::max(hi_max, h_plus);
    }
  }
  LambdaExtremes out;
  out.lambda_min = lo_min;
  out.lambda_max = hi_max;
  out.spread_min = lo_max - lo_min;
  out.spread_max = hi_max - hi_min;
  return out;
}

SpectralReport estimate_lambda_sup_inf(const OperatorSpec& op,
                                       std::pair<double, double> lambda_range, int steps,
                                       int sphere_samples, double finite_slope_threshold) {
  if (steps < 2) throw std::invalid_argument("estimate_lambda_sup_inf: steps >= 2");
  const double lo = lambda_range.first;
  const double hi = lambda_range.second;
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw std::invalid_argument("estimate_lambda_sup_inf: bad lambda range");

  SpectralReport rep;
  rep.sphere_samples = sphere_samples;
  rep.lambda_grid.resize(static_cast<std::size_t>(steps));
  rep.lambda_min_values.resize(static_cast<std::size_t>(steps));
  rep.lambda_max_values.resize(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double lam = lo + (hi - lo) * i / (steps - 1);
    const LambdaExtremes ex = lambda_extremes(op, lam, sphere_samples);
    rep.lambda_grid[static_cast<std::size_t>(i)] = lam;
    rep.lambda_min_values[static_cast<std::size_t>(i)] = ex.lambda_min;
    rep.lambda_max_values[static_cast<std::size_t>(i)] = ex.lambda_max;
  }

  // Condition A forces both sample sequences nondecreasing in lambda.
  double worst = 0.0;
  for (int i = 1; i < steps; ++i) {
    const std::size_t j = static_cast<std::size_t>(i);
    const double scale_min = 1.0 + std::abs(rep.lambda_min_values[j]);
    const double scale_max = 1.0 + std::abs(rep.lambda_max_values[j]);
    worst = std::max(worst, (rep.lambda_min_values[j - 1] - rep.lambda_min_values[j]) / scale_min);
    worst = std::max(worst, (rep.lambda_max_values[j - 1] - rep.lambda_max_values[j]) / scale_max);
  }
  rep.worst_monotonicity_violation = std::max(0.0, worst);
  rep.monotone_ok = rep.worst_monotonicity_violation <= 1e-9;

  // Upper tail of Lambda_max decides Lambda^sup, lower tail of Lambda_min
  // decides Lambda^inf. "Last decade" = the top (resp. bottom) tenth of the
  // sweep by lambda magnitude.
  auto tail_slope_upper = [&]() {
    const double lam_end = rep.lambda_grid.back();
    const double lam_start = (lam_end > 0.0) ? lam_end / 10.0 : lam_end - 0.1 * (hi - lo);
    std::size_t i0 = 0;
    for (std::size_t i = 0; i < rep.lambda_grid.size(); ++i)
      if (rep.lambda_grid[i] >= lam_start) {
        i0 = i;
        break;
      }
    if (i0 + 1 >= rep.lambda_grid.size()) i0 = rep.lambda_grid.size() - 2;
    const double dl = rep.lambda_grid.back() - rep.lambda_grid[i0];
    return (rep.lambda_max_values.back() - rep.lambda_max_values[i0]) / std::max(dl, 1e-300);
  };
  auto tail_slope_lower = [&]() {
    const double lam_begin = rep.lambda_grid.front();
    const double lam_stop = (lam_begin < 0.0) ? lam_begin / 10.0 : lam_begin + 0.1 * (hi - lo);
    std::size_t i1 = rep.lambda_grid.size() - 1;
    for (std::size_t i = 0; i < rep.lambda_grid.size(); ++i)
      if (rep.lambda_grid[i] >= lam_stop) {
        i1 = i;
        break;
      }
    if (i1 == 0) i1 = 1;
    const double dl = rep.lambda_grid[i1] - rep.lambda_grid.front();
    return (rep.lambda_min_values[i1] - rep.lambda_min_values.front()) / std::max(dl, 1e-300);
  };

  rep.lambda_sup.tail_slope = tail_slope_upper();
  rep.lambda_sup.finite = std::abs(rep.lambda_sup.tail_slope) < finite_slope_threshold;
  rep.lambda_sup.value = rep.lambda_sup.finite
                             ? *std::max_element(rep.lambda_max_values.begin(),
                                                 rep.lambda_max_values.end())
                             : std::numeric_limits<double>::infinity();

  rep.lambda_inf.tail_slope = tail_slope_lower();
  rep.lambda_inf.finite = std::abs(rep.lambda_inf.tail_slope) < finite_slope_threshold;
  rep.lambda_inf.value = rep.lambda_inf.finite
                             ? *std::min_element(rep.lambda_min_values.begin(),
                                                 rep.lambda_min_values.end())
                             : -std::numeric_limits<double>::infinity();
  return rep;
}

namespace {

struct TrialViolations {
  double mono = 0.0;
  double homog = 0.0;
};

TrialViolations run_trial(const OperatorSpec& op, std::uint64_t seed, std::uint64_t trial) {
  std::mt19937_64 rng = substream(seed, trial);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int n = op.n;

  Vec q(static_cast<std::size_t>(n));
  for (double& x : q) x = 2.0 * unit(rng);
  SymMatrix X = SymMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) X.set(i, j, 2.0 * unit(rng));

  TrialViolations out;

  // Condition A: H(q, X) <= H(q, X + A^T A).
  {
    std::vector<Vec> rows(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n)));
    SymMatrix P = SymMatrix::zero(n);
    for (auto& row : rows)
      for (double& x : row) x = unit(rng);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] *
               rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
        P.set(i, j, s);
      }
    SymMatrix XP = X;
    XP.add_scaled(P, 1.0);
    const double h0 = eval_H(op, q, X);
    const double h1 = eval_H(op, q, XP);
    out.mono = (h0 - h1) / (1.0 + std::abs(h0) + std::abs(h1));
  }

  // Condition B: |theta|^{k1} scaling in q and positive linearity in X.
  {
    std::uniform_real_distribution<double> theta_dist(-10.0, 10.0);
    double theta = theta_dist(rng);
    if (std::abs(theta) < 1e-3) theta = 1e-3;
    const double h = eval_H(op, q, X);
    const double h_q = eval_H(op, scaled(q, theta), X);
    const double expect_q = std::pow(std::abs(theta), op.k1) * h;
    const double denom_q = std::max({std::abs(h_q), std::abs(expect_q), 1e-12});
    double v = std::abs(h_q - expect_q) / denom_q;

    std::uniform_real_distribution<double> pos(1e-3, 10.0);
    const double tpos = pos(rng);
    SymMatrix Xs = SymMatrix::zero(n);
    Xs.add_scaled(X, tpos);
    const double h_x = eval_H(op, q, Xs);
    const double expect_x = tpos * h;
    const double denom_x = std::max({std::abs(h_x), std::abs(expect_x), 1e-12});
    v = std::max(v, std::abs(h_x - expect_x) / denom_x);
    out.homog = v;
  }

  return out;
}

}  // namespace

ConditionReport check_conditions(const OperatorSpec& op, int trials, std::uint64_t seed,
                                 Exec exec) {
  if (trials < 1) throw std::invalid_argument("check_conditions: trials >= 1");
  ConditionReport rep;
  rep.trials = trials;

  std::vector<TrialViolations> v(static_cast<std::size_t>(trials));
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int t = 0; t < trials; ++t)
      v[static_cast<std::size_t>(t)] = run_trial(op, seed, static_cast<std::uint64_t>(t));
  } else {
    for (int t = 0; t < trials; ++t)
      v[static_cast<std::size_t>(t)] = run_trial(op, seed, static_cast<std::uint64_t>(t));
  }
  for (const auto& tv : v) {
    rep.monotonicity.worst_violation = std::max(rep.monotonicity.worst_violation, tv.mono);
    rep.homogeneity.worst_violation = std::max(rep.homogeneity.worst_violation, tv.homog);
  }
  rep.monotonicity.passed = rep.monotonicity.worst_violation <= 1e-9;
  rep.homogeneity.passed = rep.homogeneity.worst_violation <= 1e-9;

  // Condition C over sampled directions: max_e H(e,-I) < 0 < min_e H(e,I).
  {
    const auto dirs = unit_sphere_directions(op.n, 64);
    double max_minus = -std::numeric_limits<double>::infinity();
    double min_plus = std::numeric_limits<double>::infinity();
    SymMatrix mI = SymMatrix::identity(op.n);
    mI.add_scaled_identity(-2.0);
    const SymMatrix I = SymMatrix::identity(op.n);
    for (const Vec& e : dirs) {
      max_minus = std::max(max_minus, eval_H(op, e, mI));
      min_plus = std::min(min_plus, eval_H(op, e, I));
    }
    rep.growth.passed = (max_minus < 0.0) && (0.0 < min_plus);
    rep.growth.worst_violation = std::max(max_minus, -min_plus);
    rep.growth.note = "max_e H(e,-I)=" + std::to_string(max_minus) +
                      ", min_e H(e,I)=" + std::to_string(min_plus);
  }
  return rep;
}

}  // namespace parab
