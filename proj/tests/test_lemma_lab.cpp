#include <cmath>
#include <vector>

#include "adamlab/lemma_lab.hpp"
#include "adamlab/rng.hpp"
#include "doctest.h"

using namespace adamlab;

namespace {

HyperParams region_hyper(std::int64_t T = 200) {
  HyperParams h;
  h.beta1 = 0.9;
  h.beta2 = 0.99;
  h.lambda_m = 1.0;
  h.lambda_g = 1.0;
  h.T = T;
  return h;
}

std::vector<double> nonneg_gradients(std::uint64_t seed, std::int64_t n) {
  CellRng rng(seed);
  std::vector<double> g(static_cast<std::size_t>(n));
  for (double& v : g) v = rng.positive_unit();
  return g;
}

std::vector<double> normalized(std::vector<double> g) {
  double sq = 0.0;
  for (double v : g) sq += v * v;
  const double norm = std::sqrt(sq);
  for (double& v : g) v /= norm;
  return g;
}

}  // namespace

TEST_CASE("ratio bound at t = 1 equals x1^2/x2, strictly below K*x1^2/x2") {
  const HyperParams h = region_hyper(1);
  const Trace trace = run_trace_values(h, std::vector{2.5});
  const TrajectoryState& st = trace.back();
  const double ratio = st.m * st.m / st.v;
  const double x1 = 1.0 - h.beta1;
  const double x2 = 1.0 - h.beta2;
  CHECK(ratio == doctest::Approx(x1 * x1 / x2).epsilon(1e-14));
  const LemmaReport report = check_ratio_bound(trace);
  CHECK(report.ok());
  CHECK(report.checked_steps == 1);
  CHECK(report.max_slack_violation == 0.0);
}

TEST_CASE("ratio bound holds on fuzzed traces and a constant-gradient run") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Trace trace =
        run_trace_values(region_hyper(500), nonneg_gradients(seed, 500));
    CHECK(check_ratio_bound(trace).ok());
  }
  const Trace constant = run_trace(region_hyper(2000), ConstantSource{0.7}, 2000);
  CHECK(check_ratio_bound(constant).ok());
  // Steady state: the ratio tends to 1 from x1^2/x2 and stays below 5.5.
  const TrajectoryState& last = constant.back();
  CHECK(last.m * last.m / last.v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ratio bound rejects out-of-scope traces before checking") {
  HyperParams h = region_hyper();
  h.lambda_m = 0.9;
  CHECK_THROWS_AS((void)check_ratio_bound(run_trace(h, InvSqrtSource{}, 10)),
                  ScopeError);
  h = region_hyper();
  h.beta2 = 0.5;  // rho < 1
  CHECK_THROWS_AS((void)check_ratio_bound(run_trace(h, InvSqrtSource{}, 10)),
                  ScopeError);
}

TEST_CASE("bias correction never increases the moment ratio in scope") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Trace trace =
        run_trace_values(region_hyper(300), nonneg_gradients(seed, 300));
    CHECK(check_bias_correction_shrinks(trace).ok());
  }
}

TEST_CASE("correction factor") {
  SUBCASE("c_1 = x2/x1^2; exactly 1 on the boundary in rational arithmetic") {
    CHECK(correction_factor_exact(parse_decimal("0.9"), parse_decimal("0.99"), 1) ==
          Rational(1));
    CHECK(correction_factor(0.9, 0.99, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(h_function_exact(parse_decimal("0.9"), parse_decimal("0.99"), 1) ==
          Rational(0));
  }
  SUBCASE("out-of-scope witness: c_2(0.5, 0.5) = 4/3, h = 0.1875 exactly") {
    CHECK(correction_factor(0.5, 0.5, 2.0) == doctest::Approx(4.0 / 3.0));
    CHECK(h_function(0.5, 0.5, 2.0) == 0.1875);
    CHECK(correction_factor_exact(Rational(1, 2), Rational(1, 2), 2) ==
          Rational(4, 3));
  }
  SUBCASE("c_t tends to 1 from below for in-scope pairs") {
    const double c_large = correction_factor(0.9, 0.99, 1e6);
    CHECK(c_large <= 1.0);
    CHECK(c_large > 0.999999);
  }
  SUBCASE("grid checker passes in scope, fails on the witness") {
    const std::vector<double> grid = log_spaced_grid(1.0, 1e4, 1000);
    CHECK(check_correction_factor_grid(0.9, 0.99, grid).ok());
    CHECK(check_h_grid(0.9, 0.99, grid).ok());
    const LemmaReport bad = check_correction_factor_grid(0.5, 0.5, grid);
    CHECK_FALSE(bad.ok());
    CHECK(bad.first_violation_t.has_value());
    CHECK(bad.max_slack_violation < -0.3);  // c_2 = 4/3 overshoots by 1/3
    CHECK_FALSE(check_h_grid(0.5, 0.5, grid).ok());
  }
  SUBCASE("h(1) = x2 - x1^2 changes sign exactly at the scope boundary") {
    // h(1) <= 0 iff beta2 >= 2*beta1 - beta1^2 (= 3/4 at beta1 = 1/2).
    CHECK(h_function_exact(Rational(1, 2), Rational(3, 4), 1) == Rational(0));
    CHECK(h_function_exact(Rational(1, 2), Rational(74, 100), 1) > 0);
    CHECK(h_function_exact(Rational(1, 2), Rational(76, 100), 1) < 0);
  }
}

TEST_CASE("log-spaced grid endpoints and shape") {
  const std::vector<double> grid = log_spaced_grid(1.0, 1e4, 1000);
  CHECK(grid.size() == 1000);
  CHECK(grid.front() == 1.0);
  CHECK(grid.back() == 1e4);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("polynomial P") {
  SUBCASE("P(1) = 0 exactly for any r") {
    for (double r : {1.0, 1.5, 2.0, 5.0, 20.966, 123.25})
      CHECK(polynomial_P(1.0, r) == 0.0);
  }
  SUBCASE("r = 1 degenerates to alpha - 1 <= 0") {
    for (double a = 0.05; a < 1.0; a += 0.05)
      CHECK(polynomial_P(a, 1.0) == doctest::Approx(a - 1.0));
  }
  SUBCASE("P(x1) >= 0 across fuzzed in-scope pairs") {
    CellRng rng(99);
    for (int i = 0; i < 300; ++i) {
      const double b1 = rng.uniform(0.01, 0.99);
      const double lo = 2.0 * b1 - b1 * b1;
      if (lo >= 1.0 - 1e-12) continue;
      const double b2 = rng.uniform(lo, 1.0 - 1e-12);
      if (!classify_region(b1, b2).lemma32_ok) continue;
      CHECK(check_polynomial_at_x1(b1, b2).ok());
    }
  }
}

TEST_CASE("appendix y and its derivative") {
  SUBCASE("worked value at 0.5: 2^(1/3) - 3/2") {
    CHECK(appendix_y(0.5) ==
          doctest::Approx(-0.2400789501051268).epsilon(1e-14));
  }
  SUBCASE("999-point grid is nonpositive") {
    const LemmaReport report = check_appendix_y_grid(999);
    CHECK(report.ok());
    CHECK(report.checked_steps == 999);
  }
  SUBCASE("local-max signature at beta1 = 1") {
    const double h = 1e-4;
    CHECK(std::abs(appendix_y(1.0 - h)) < 1e-6);
    CHECK(std::abs(appendix_y(1.0 + h)) < 1e-6);
    const double slope = (appendix_y(1.0 + h) - appendix_y(1.0 - h)) / (2.0 * h);
    CHECK(std::abs(slope) < 1e-3);
    const double curvature =
        (appendix_y(1.0 - h) - 2.0 * appendix_y(1.0) + appendix_y(1.0 + h)) / (h * h);
    CHECK(curvature == doctest::Approx(-2.0).epsilon(1e-3));
  }
  SUBCASE("closed form matches central differences at step 1e-6") {
    for (double b = 0.05; b < 0.96; b += 0.05) {
      const double h = 1e-6;
      const double fd = (appendix_y(b + h) - appendix_y(b - h)) / (2.0 * h);
      const double closed = appendix_y_derivative(b);
      CHECK(std::abs(closed - fd) <= 1e-6 * std::max(1.0, std::abs(closed)));
    }
  }
  SUBCASE("root substitution: replacing the power term by 2 - beta1 gives "
          "-2 log(beta1)/(2 - beta1) > 0") {
    for (double b = 0.05; b < 0.999; b += 0.037) {
      const double substituted =
          (2.0 - b) * ((-2.0 * std::log(b) + b - 2.0) / ((2.0 - b) * (2.0 - b))) + 1.0;
      const double simplified = -2.0 * std::log(b) / (2.0 - b);
      CHECK(substituted == doctest::Approx(simplified).epsilon(1e-12));
      CHECK(simplified > 0.0);
    }
  }
}

TEST_CASE("norm bounds") {
  SUBCASE("single step with g = 1") {
    // (0.9, 0.99) sits exactly on the inclusive boundary, so the exact betas
    // must come from the decimal-faithful route; the rounded doubles alone
    // classify as outside the region.
    const Trace trace = run_trace_values(region_hyper(1), std::vector{1.0});
    const NormBoundsReport report =
        check_norm_bounds(trace, derived_constants_decimal("0.9", "0.99"));
    CHECK(report.ok());
    CHECK(report.m_hat_norm_value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(report.mu_norm_value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(report.cauchy_schwarz_slack) < 1e-12);
  }
  SUBCASE("normalized nonnegative fuzz at (0.9, 0.99)") {
    const DerivedConstants constants = derived_constants_decimal("0.9", "0.99");
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const Trace trace = run_trace_values(
          region_hyper(200), normalized(nonneg_gradients(seed, 200)));
      const NormBoundsReport report = check_norm_bounds(trace, constants);
      CHECK(report.ok());
      CHECK(report.cauchy_schwarz_slack >= -1e-12);
      CHECK(trace.s_final() <=
            report.m_hat_norm_value * report.mu_norm_value * (1.0 + 1e-12));
    }
  }
  SUBCASE("preconditions are enforced") {
    // An interior pair, so each rejection below comes from its own check.
    HyperParams interior = region_hyper(50);
    interior.beta2 = 0.995;
    // Unnormalized.
    CHECK_THROWS_WITH_AS(
        (void)check_norm_bounds(run_trace(interior, ConstantSource{1.0}, 50)),
        doctest::Contains("||g|| = 1"), ScopeError);
    // Negative gradients.
    std::vector<double> g = normalized(nonneg_gradients(3, 50));
    g[10] = -g[10];
    CHECK_THROWS_WITH_AS((void)check_norm_bounds(run_trace_values(interior, g)),
                         doctest::Contains("nonnegative"), ScopeError);
    // lambda_g != 1.
    HyperParams h = interior;
    h.lambda_g = 0.999;
    CHECK_THROWS_WITH_AS(
        (void)check_norm_bounds(
            run_trace_values(h, normalized(nonneg_gradients(4, 50)))),
        doctest::Contains("lambda_g"), ScopeError);
    // Out of region.
    HyperParams out = region_hyper(50);
    out.beta1 = 0.5;
    out.beta2 = 0.5;
    CHECK_THROWS_WITH_AS(
        (void)check_norm_bounds(
            run_trace_values(out, normalized(nonneg_gradients(5, 50)))),
        doctest::Contains("region"), ScopeError);
  }
}

TEST_CASE("homogeneity of the running sum") {
  const HyperParams h = region_hyper(200);
  CHECK(homogeneity_check(InvSqrtSource{}, 1.0, h) == 0.0);
  HyperParams fig1;
  fig1.beta1 = 0.1;
  fig1.beta2 = 0.1;
  fig1.lambda_m = 1.0 - 1e-8;
  fig1.lambda_g = 1.0 - 1e-8;
  fig1.T = 200;
  for (double zeta : {1e-6, 0.5, 2.0, 1e6})
    CHECK(homogeneity_check(InvSqrtSource{}, zeta, fig1) < 1e-10);
  CHECK_THROWS_AS((void)homogeneity_check(InvSqrtSource{}, 0.0, h),
                  std::invalid_argument);
}

TEST_CASE("proof scalars") {
  const Trace trace = run_trace(region_hyper(10), InvSqrtSource{}, 10);
  const TrajectoryState& st = trace.steps[4];
  const ProofScalars p = proof_scalars(0.9, 0.99, st, 2.0);
  CHECK(p.alpha == 1.0 - std::pow(0.9, 5.0));
  CHECK(p.c_t == correction_factor(0.9, 0.99, 5.0));
  CHECK(p.h_t == h_function(0.9, 0.99, 5.0));
  CHECK(p.mu_t == st.mu());
  CHECK(p.zeta == 2.0);
  CHECK(p.alpha >= 1.0 - 0.9);  // alpha in [x1, 1)
  CHECK(p.alpha < 1.0);
}
