#include "parab/barrier_factory.hpp"

#include <cmath>

#include "doctest.h"

using namespace parab;

namespace {

ProblemParams k3_params(double sigma, double alpha = 1.0, int n = 2, double T = 1.0) {
  return ProblemParams::make(OperatorSpec::grad_trace_minus_infinity(0.0, n), sigma, T,
                             alpha == 0.0 ? ChiSpec::zero(T) : ChiSpec::constant(alpha, T),
                             ZSpec::zero_above(1.0, -std::numeric_limits<double>::infinity()));
}

ProblemParams k1_params(double sigma, double alpha = 1.0, double T = 1.0) {
  return ProblemParams::make(OperatorSpec::truncated_eigen_sum(0.0, 2, 3), sigma, T,
                             alpha == 0.0 ? ChiSpec::zero(T) : ChiSpec::constant(alpha, T),
                             ZSpec::zero_above(1.0, -std::numeric_limits<double>::infinity()));
}

}  // namespace

TEST_CASE("dispatch: (k, sigma) -> case id, including the sigma = gamma/2 boundary") {
  CHECK(dispatch_case_id(k3_params(0.0), Direction::Super) == "I.i");
  CHECK(dispatch_case_id(k3_params(1.0), Direction::Super) == "I.ii");
  CHECK(dispatch_case_id(k3_params(2.0), Direction::Super) == "I.iii");  // gamma/2 = 2
  CHECK(dispatch_case_id(k3_params(3.0), Direction::Super) == "I.iv");
  CHECK(dispatch_case_id(k3_params(1.0), Direction::Sub) == "V.I");
  CHECK(dispatch_case_id(k1_params(0.0), Direction::Super) == "II.a");
  CHECK(dispatch_case_id(k1_params(1.0), Direction::Super) == "II.b");  // gamma/2 = 1 boundary
  CHECK(dispatch_case_id(k1_params(1.5), Direction::Super) == "II.iii");
  CHECK(dispatch_case_id(k1_params(8.0), Direction::Super) == "II.iv");
  CHECK(dispatch_case_id(k1_params(2.0), Direction::Sub) == "V.II");
}

TEST_CASE("case I.ii constants: plug-in arithmetic oracle (k=3, sigma=1, alpha=1, T=1, n=2)") {
  const auto params = k3_params(1.0);
  CHECK(params.M == doctest::Approx(1.0));  // Lambda^sup = n-1 = 1, M = max(.,1)
  // gamma = 4, gamma* = 2, E = M (gamma*(1+T))^3 = 64, F = gamma*(1+T) = 4.
  const double E = 64.0, F = 4.0;
  const double b = 0.01;
  const auto w = build_supersolution(params, b);
  CHECK(w.case_id == "I.ii");
  CHECK(w.b_max == doctest::Approx(1.0 / 16.0));  // b^2 < min(1, 1/(4E)) = 1/256
  CHECK(w.R_case == doctest::Approx(4.0 * F));    // (4 alpha F b^0)^{(gamma-2)/(gamma-2 sigma)}
  const double a_expected = E * b * b * b * 256.0 + 1.0 * F * b * 16.0;
  CHECK(w.a == doctest::Approx(a_expected).epsilon(1e-13));
  CHECK(w.a_limit == 0.0);

  CHECK_THROWS_WITH_AS(build_supersolution(params, 0.1), doctest::Contains("admissibility"),
                       std::invalid_argument);
}

TEST_CASE("case I.i: a = alpha and the b -> 0 limit is alpha") {
  const auto params = k3_params(0.0);
  const double b_cap = max_admissible_b(params, Direction::Super);
  CHECK(b_cap == doctest::Approx(std::pow(64.0, -2.0)));  // min(1, E^{1-k})
  const auto w = build_supersolution(params, 0.5 * b_cap);
  CHECK(w.case_id == "I.i");
  CHECK(w.a == doctest::Approx(1.0));
  CHECK(w.a_limit == doctest::Approx(1.0));
  CHECK(a_limit_table(params, Direction::Super) == doctest::Approx(1.0));
}

TEST_CASE("case I.iii / I.iv: bisected b0 and the recorded inequality") {
  const auto p3 = k3_params(2.0);
  const auto w3 = build_supersolution(p3, 0.9 * max_admissible_b(p3, Direction::Super));
  CHECK(w3.case_id == "I.iii");
  CHECK(w3.a == 0.0);
  // E b^{k-1} + alpha F b^{(gamma-2)/2} stays below 1/2 at the cap (pre-shrink
  // root is twice the cap, so the used b sits well inside).
  const double E = 64.0, F = 16.0;
  const double g = E * w3.b_max * w3.b_max + F * w3.b_max;
  CHECK(g < 0.5);

  const auto p4 = k3_params(3.0);
  const auto w4 = build_supersolution(p4, 0.9 * max_admissible_b(p4, Direction::Super));
  CHECK(w4.case_id == "I.iv");
  CHECK(w4.profile.kind() == ProfileKind::RegularizedPower);
  // p = 1 - sigma*/gamma* = 1 - (3/2)/2 = 1/4.
  CHECK(w4.p_reg == doctest::Approx(0.25));
  CHECK(w4.a > 0.0);
}

TEST_CASE("Part II constants (k = 1)") {
  SUBCASE("II.a: c = 1/(2(1+T)M), a = alpha") {
    const auto params = k1_params(0.0);
    CHECK(params.M == doctest::Approx(2.0));  // Lambda^sup = n+1-m = 2
    const auto w = build_supersolution(params, 0.3);
    CHECK(w.case_id == "II.a");
    CHECK(w.c == doctest::Approx(1.0 / (2.0 * 2.0 * 2.0)));
    CHECK(w.a == doctest::Approx(1.0));
    CHECK(w.a_limit == doctest::Approx(1.0));
  }
  SUBCASE("II.b: c solves c^2 Ebar + sigma c^sigma Fbar = 1 - eps; sigma = 1 limit is 0") {
    const auto params = k1_params(0.5);
    const auto w = build_supersolution(params, 0.25);
    CHECK(w.case_id == "II.b");
    const double Ebar = 2.0 * 2.0;  // (1+T) M
    const double Fbar = 1.0 * std::pow(2.0, 0.5);
    CHECK(w.c * w.c * Ebar + 0.5 * std::sqrt(w.c) * Fbar == doctest::Approx(0.9).epsilon(1e-10));
    CHECK(w.a == doctest::Approx(0.25 * std::log(10.0) + 0.5 * std::sqrt(w.c) * Fbar));
    CHECK(w.a_limit == doctest::Approx(0.5 * std::sqrt(w.c) * Fbar));

    const auto w1 = build_supersolution(k1_params(1.0), 0.25);
    CHECK(w1.case_id == "II.b");
    CHECK(w1.a_limit == doctest::Approx(0.0));
  }
  SUBCASE("II.iii: R = sqrt(4 sigma* Ebar)") {
    const auto params = k1_params(2.0);
    const auto w = build_supersolution(params, 0.5 * max_admissible_b(params, Direction::Super));
    CHECK(w.case_id == "II.iii");
    CHECK(w.R_case == doctest::Approx(std::sqrt(4.0 * 2.0 * 4.0)));
    CHECK(w.profile.kind() == ProfileKind::Power);
  }
  SUBCASE("II.iv: regularized profile with p = 1 - sigma*/2") {
    const auto params = k1_params(3.0);
    const auto w = build_supersolution(params, 0.5 * max_admissible_b(params, Direction::Super));
    CHECK(w.case_id == "II.iv");
    CHECK(w.p_reg == doctest::Approx(1.0 - (1.5 / 2.0)));
  }
}

TEST_CASE("sub-solutions: mirrored table with the case lower bound") {
  SUBCASE("V.I sigma = 0: a_limit = alpha, constants use |N| = n-1") {
    const auto params = k3_params(0.0, 1.0, 3);
    const auto w = build_subsolution(params, 1e-4);
    CHECK(w.case_id == "V.I");
    CHECK(w.sign == -1.0);
    CHECK(w.N_used == doctest::Approx(-2.0));  // Lambda_min == -(n-1)
    CHECK(w.a_limit == doctest::Approx(1.0));
    CHECK(w.value(1.0, 0.5) < 0.0);
  }
  SUBCASE("V.II sigma <= 1 needs a finite lower bound: truncated eigen-sum fails") {
    const auto params = k1_params(0.5);
    CHECK_THROWS_WITH_AS(build_subsolution(params, 0.1),
                         doctest::Contains("minimum principle requires finite lower"),
                         std::runtime_error);
  }
  SUBCASE("V.II sigma = 0.5 with the middle-eigenvalue operator: (4.16)-style limit") {
    const auto params = ProblemParams::make(
        OperatorSpec::middle_eigenvalue(3), 0.5, 1.0, ChiSpec::constant(1.0, 1.0),
        ZSpec::power_decay(-std::numeric_limits<double>::infinity()));
    CHECK(params.lambda_inf.has_value());
    CHECK(*params.lambda_inf == doctest::Approx(-1.0));
    const auto w = build_subsolution(params, 0.25);
    CHECK(w.case_id == "V.II");
    // a_limit = (1-sigma) alpha (c (1+T))^sigma.
    CHECK(w.a_limit == doctest::Approx(0.5 * std::sqrt(2.0 * w.c)));
  }
  SUBCASE("V.II sigma = 2 works for truncated eigen-sum (power profile, coeff bounded)") {
    const auto params = k1_params(2.0);
    const auto w = build_subsolution(params, 0.5 * max_admissible_b(params, Direction::Sub));
    CHECK(w.case_id == "V.II");
    CHECK(w.N_used == doctest::Approx(-2.0));  // Lambda_min(2 - sigma*) = Lambda_min(0)
  }
}

TEST_CASE("Z-domain guard: sub-solutions need Z on all of R") {
  auto params = ProblemParams::make(OperatorSpec::grad_trace_minus_infinity(0.0, 2), 0.0, 1.0,
                                    ChiSpec::constant(1.0, 1.0), ZSpec::zero_above(1.0, 0.0));
  CHECK_THROWS_WITH_AS(build_subsolution(params, 1e-5), doctest::Contains("Z domain"),
                       std::invalid_argument);
  CHECK_NOTHROW(build_supersolution(params, 1e-5));
}

TEST_CASE("special constructions") {
  SUBCASE("VI.i-1: center value mu/(1+t/E)^{1/(k-1)} and the E formula") {
    const auto params = k3_params(0.0, 0.0);  // chi == 0
    const double R = 5.0, mu = 1.0;
    const auto w = build_special(params, SpecialCase::I1, R, mu);
    CHECK(w.case_id == "VI.i-1");
    // c_k = ((k+1)/(k-1))^k = 8, |N| = n-1 = 1, E = R^4/(8 mu^2 (k-1) |N|).
    CHECK(w.decay_E == doctest::Approx(std::pow(R, 4.0) / (8.0 * 2.0 * 1.0)));
    CHECK(w.value(0.0, 0.0) == doctest::Approx(mu));
    const double t = 0.7;
    CHECK(w.value(0.0, t) == doctest::Approx(mu / std::sqrt(1.0 + t / w.decay_E)));
    CHECK(w.value(R, t) == doctest::Approx(0.0));
    // Nonincreasing in r.
    double prev = w.value(0.0, t);
    for (double r = 0.25; r <= R; r += 0.25) {
      const double cur = w.value(r, t);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
    CHECK(w.a_limit == doctest::Approx(mu));
  }
  SUBCASE("VI.i-2: Gaussian decay, F = 2|N|E") {
    const auto params = k1_params(0.0, 0.0);
    const auto w = build_special(params, SpecialCase::I2, 0.0, 2.5, 0.1);
    CHECK(w.case_id == "VI.i-2");
    CHECK(w.N_used == doctest::Approx(-2.0));
    CHECK(w.decay_F == doctest::Approx(2.0 * 2.0 * 0.1));
    CHECK(w.value(0.0, 0.0) == doctest::Approx(2.5));
    CHECK(w.region.all_space);
  }
  SUBCASE("VI.ii-1: r* = M/|alpha_hat| and the R <= r* rejection") {
    const auto params = ProblemParams::make(
        OperatorSpec::truncated_eigen_sum(0.0, 2, 3), 1.0, 1.0, ChiSpec::constant(-1.0, 1.0),
        ZSpec::zero_above(1.0, -std::numeric_limits<double>::infinity()));
    CHECK(params.alpha_hat_neg.has_value());
    const auto w = build_special(params, SpecialCase::II1, 10.0, 0.0);
    CHECK(w.r_star == doctest::Approx(2.0));  // M = 2, |alpha_hat| = 1
    CHECK(w.direction == Direction::Super);
    CHECK(w.a_limit == 0.0);
    CHECK_THROWS_WITH_AS(build_special(params, SpecialCase::II1, 1.5, 0.0),
                         doctest::Contains("requires R > r*"), std::invalid_argument);
  }
  SUBCASE("VI.ii-2: bisected r* solves 2^{sigma-k} |alpha_hat| f(r*) = M") {
    const auto params = ProblemParams::make(
        OperatorSpec::truncated_eigen_sum(0.0, 2, 3), 2.0, 1.0, ChiSpec::constant(-1.0, 1.0),
        ZSpec::zero_above(1.0, -std::numeric_limits<double>::infinity()));
    const double R = 10.0;
    const auto w = build_special(params, SpecialCase::II2, R, 0.0);
    const double f = std::pow(w.r_star, 2.0) * std::pow(R * R - w.r_star * w.r_star, -2.0);
    CHECK(2.0 * f == doctest::Approx(params.M).epsilon(1e-9));
  }
  SUBCASE("VI.iii: mirror with the global lower bound") {
    const auto params = ProblemParams::make(
        OperatorSpec::grad_trace_minus_infinity(0.0, 2), 3.0, 1.0, ChiSpec::constant(1.0, 1.0),
        ZSpec::power_decay(-std::numeric_limits<double>::infinity()));
    CHECK(params.alpha_hat_pos.has_value());
    const auto w = build_special(params, SpecialCase::III, 5.0, 0.0);
    CHECK(w.case_id == "VI.iii");
    CHECK(w.direction == Direction::Sub);
    CHECK(w.r_star == doctest::Approx(1.0));  // |N| = 1, alpha_hat = 1, sigma = k
    const double gap = 25.0 - 1.0;
    CHECK(w.a == doctest::Approx(1.0 * std::pow(4.0 / (gap * gap), 3.0)));
  }
}

TEST_CASE("a(b) is nondecreasing in b within each case") {
  for (double sigma : {0.0, 1.0, 2.0, 3.0}) {
    const auto params = k3_params(sigma);
    const double cap = max_admissible_b(params, Direction::Super);
    double prev = -1.0;
    for (double f : {0.1, 0.2, 0.4, 0.8}) {
      const auto w = build_supersolution(params, f * cap);
      CHECK(w.a >= prev - 1e-15);
      prev = w.a;
    }
  }
}

TEST_CASE("a_limit extrapolation matches the closed form (representative cases)") {
  for (double sigma : {0.0, 1.0, 3.0}) {
    const auto params = k3_params(sigma);
    const auto ex = extrapolate_a_limit(params, Direction::Super);
    CHECK(std::abs(ex.extrapolated - ex.closed_form) <= 1e-6);
  }
  const auto paramsb = k1_params(0.5);
  const auto exb = extrapolate_a_limit(paramsb, Direction::Super);
  CHECK(std::abs(exb.extrapolated - exb.closed_form) <= 1e-6);
  CHECK(exb.note.find("inferred") != std::string::npos);
}

TEST_CASE("monomial dominance checker") {
  // -r^2 + r dominated at r0 = 2: bracket -1 + 2^{-1} <= 0.
  CHECK(monomials_nonpositive({{-1.0, 2.0}, {1.0, 1.0}}, 2.0));
  CHECK_FALSE(monomials_nonpositive({{-1.0, 2.0}, {1.0, 1.0}}, 0.5));
  // Positive term with the largest power can never be dominated.
  CHECK_FALSE(monomials_nonpositive({{1.0, 3.0}, {-10.0, 2.0}}, 100.0));
  // All nonpositive passes trivially.
  CHECK(monomials_nonpositive({{-1.0, 2.0}, {0.0, 5.0}}, 1.0));
}
