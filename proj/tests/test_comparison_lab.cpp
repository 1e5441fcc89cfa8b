#include "parab/comparison_lab.hpp"

#include <cmath>

#include "doctest.h"
#include "parab/sampling.hpp"

using namespace parab;

namespace {

ProblemParams lab_params(OperatorSpec op, double sigma, ChiSpec chi) {
  return ProblemParams::make(std::move(op), sigma, 1.0, std::move(chi),
                             ZSpec::zero());
}

RadialGridField random_profile(double R, double h, std::uint64_t seed, double scale) {
  std::mt19937_64 rng = substream(seed, 0xf1e1d);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a1 = u(rng), a2 = u(rng), a3 = u(rng);
  return RadialGridField::from_function(R, h, [=](double r) {
    return scale * (a1 * std::cos(M_PI * r / R) + a2 * std::sin(2.0 * M_PI * r / R) +
                    a3 * (1.0 - r / R));
  });
}

}  // namespace

TEST_CASE("step: constant field with chi == 0 is a fixed point") {
  const auto params = lab_params(OperatorSpec::truncated_eigen_sum(0.0, 2, 3), 0.0,
                                 ChiSpec::zero(1.0));
  auto u = RadialGridField::from_function(4.0, 0.1, [](double) { return 3.25; });
  SchemeConfig cfg;
  const auto v = step(u, params, cfg, 1e-4, [](double) { return 3.25; });
  for (int i = 0; i < v.nodes(); ++i)
    CHECK(v.values[static_cast<std::size_t>(i)] == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("step: interior update matches the analytic reduction for u = -r^2") {
  // TruncatedEigenSum(p=0, m=2), n=3: for u = -r^2 the reduction gives
  // lambda_t = lambda_e = -2 and H = sum of the two smallest eigenvalues of
  // -2I, i.e. -4; the discrete one-sided gradient shifts it by O(h).
  const auto params = lab_params(OperatorSpec::truncated_eigen_sum(0.0, 2, 3), 0.0,
                                 ChiSpec::zero(1.0));
  const double h = 0.01;
  auto u = RadialGridField::from_function(2.0, h, [](double r) { return -r * r; });
  SchemeConfig cfg;
  const double dt = 1e-5;
  const auto v = step(u, params, cfg, dt, [&u](double) { return u.values.back(); });
  const int i = 100;  // r = 1
  const double update = (v.values[i] - u.values[i]) / dt;
  CHECK(update < 0.0);
  CHECK(update == doctest::Approx(-4.0).epsilon(0.05));
}

TEST_CASE("step: CFL violation throws, NaN detection aborts with context") {
  const auto params = lab_params(OperatorSpec::truncated_eigen_sum(0.0, 2, 3), 0.0,
                                 ChiSpec::zero(1.0));
  auto u = random_profile(2.0, 0.05, 4, 1.0);
  SchemeConfig cfg;
  const double dt_ok = suggest_dt(u, params, cfg);
  CHECK_THROWS_WITH_AS(step(u, params, cfg, 50.0 * dt_ok, [](double) { return 0.0; }),
                       doctest::Contains("CFL"), std::runtime_error);
}

TEST_CASE("discrete comparison: ordered random pairs stay ordered") {
  const auto ops = {OperatorSpec::truncated_eigen_sum(0.0, 2, 3),
                    OperatorSpec::grad_trace_minus_infinity(0.0, 2)};
  int seed = 0;
  for (const auto& op : ops) {
    for (int pair = 0; pair < 3; ++pair) {
      const auto params = lab_params(op, 0.0, ChiSpec::constant(0.5, 1.0));
      auto u = random_profile(3.0, 0.1, 100 + seed, 0.8);
      auto v = u;
      std::mt19937_64 rng = substream(200 + seed, 1);
      std::uniform_real_distribution<double> gapd(0.0, 0.5);
      for (auto& x : v.values) x += 0.05 + gapd(rng);
      ++seed;
      SchemeConfig cfg;
      cfg.t_end = 0.2;
      const double bu = u.values.back(), bv = v.values.back();
      const auto rep = compare_pair(u, v, params, cfg, [bu](double) { return bu; },
                                    [bv](double) { return bv; });
      INFO("op ", op.name(), " worst gap ", rep.worst_gap);
      CHECK(rep.violations == 0);
    }
  }
}

TEST_CASE("barrier domination: trivial and sign-flipped controls") {
  const auto params = lab_params(OperatorSpec::grad_trace_minus_infinity(0.0, 2), 0.0,
                                 ChiSpec::constant(1.0, 1.0));
  const double R = 3.0;
  const auto barrier = build_supersolution(params, 1e-3);
  auto u0 = RadialGridField::from_function(R, 0.1, [](double) { return 0.0; });
  SchemeConfig cfg;
  cfg.t_end = 0.3;

  SUBCASE("u == 0 data stays below W = nu + w") {
    const auto rep = run_against_barrier(u0, params, cfg, [](double) { return 0.0; }, barrier,
                                         /*offset=*/0.0, /*tol=*/1e-9);
    CHECK(rep.precondition_ok);
    CHECK(rep.passed);
  }
  SUBCASE("flipped barrier is reported, not silently accepted") {
    auto flipped = barrier;
    flipped.sign = -1.0;  // now w <= 0: u grows above it under chi = 1
    const auto rep = run_against_barrier(u0, params, cfg, [](double) { return 0.0; }, flipped,
                                         0.0, 1e-9);
    CHECK_FALSE(rep.passed);
  }
}

TEST_CASE("sup bound: max-norm never exceeds data plus t alpha (sigma = 0)") {
  const auto params = lab_params(OperatorSpec::truncated_eigen_sum(0.0, 2, 3), 0.0,
                                 ChiSpec::constant(0.7, 1.0));
  auto u0 = random_profile(2.0, 0.05, 77, 1.0);
  const double boundary = 0.3;
  double m0 = boundary;
  for (double x : u0.values) m0 = std::max(m0, x);
  SchemeConfig cfg;
  cfg.t_end = 0.4;
  const auto res = run(u0, params, cfg, [boundary](double) { return boundary; });
  double mT = -1e300;
  for (double x : res.final_field.values) mT = std::max(mT, x);
  CHECK(mT <= m0 + 0.7 * cfg.t_end + 1e-9);
}

TEST_CASE("self-convergence under grid refinement (order >= 0.8)") {
  const auto params = lab_params(OperatorSpec::grad_trace_minus_infinity(0.0, 2), 0.0,
                                 ChiSpec::zero(1.0));
  const double R = 2.0;
  auto initial = [R](double r) {
    const double c = std::cos(0.5 * M_PI * r / R);
    return c * c;
  };
  auto run_at = [&](double h) {
    auto u0 = RadialGridField::from_function(R, h, initial);
    SchemeConfig cfg;
    cfg.t_end = 0.1;
    cfg.dt = 1e-3;
    return run(u0, params, cfg, [](double) { return 0.0; }).final_field;
  };
  const auto fh = run_at(0.1);
  const auto fh2 = run_at(0.05);
  const auto fh4 = run_at(0.025);
  auto diff = [](const RadialGridField& coarse, const RadialGridField& fine, int ratio) {
    double d = 0.0;
    for (int i = 0; i < coarse.nodes(); ++i)
      d = std::max(d, std::abs(coarse.values[static_cast<std::size_t>(i)] -
                               fine.values[static_cast<std::size_t>(i * ratio)]));
    return d;
  };
  const double e1 = diff(fh, fh2, 2);
  const double e2 = diff(fh2, fh4, 2);
  const double order = std::log2(e1 / e2);
  INFO("diffs ", e1, " ", e2, " order ", order);
  CHECK(order >= 0.8);
}

TEST_CASE("pl_experiment: zero data keeps the center at zero") {
  auto params = lab_params(OperatorSpec::grad_trace_minus_infinity(0.0, 2), 0.0,
                           ChiSpec::zero(1.0));
  PLOptions opt;
  opt.nu = 0.0;
  opt.h = 0.25;
  const auto rep = pl_experiment(params, 2.0, {4.0}, opt);
  REQUIRE(rep.rows.size() == 1);
  // Boundary data is positive, but with nu = 0 the bound is 0; the center
  // may still be reached. Just check the run produced a finite record and
  // the zero-boundary variant stays at zero.
  CHECK(std::isfinite(rep.rows[0].center_at_T));

  auto u0 = RadialGridField::from_function(4.0, 0.25, [](double) { return 0.0; });
  SchemeConfig cfg;
  cfg.t_end = 0.5;
  const auto res = run(u0, params, cfg, [](double) { return 0.0; });
  CHECK(res.final_field.values.front() == doctest::Approx(0.0));
}

TEST_CASE("serial and parallel stepping agree bitwise") {
  const auto params = lab_params(OperatorSpec::truncated_eigen_sum(0.0, 2, 3), 0.0,
                                 ChiSpec::constant(0.3, 1.0));
  auto u = random_profile(2.0, 0.05, 5, 1.0);
  SchemeConfig cfg;
  const double dt = suggest_dt(u, params, cfg);
  const auto a = step(u, params, cfg, dt, [](double) { return 0.1; }, Exec::Serial);
  const auto b = step(u, params, cfg, dt, [](double) { return 0.1; }, Exec::Parallel);
  for (int i = 0; i < a.nodes(); ++i)
    CHECK(a.values[static_cast<std::size_t>(i)] == b.values[static_cast<std::size_t>(i)]);
}
