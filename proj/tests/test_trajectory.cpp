#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "adamlab/errors.hpp"
#include "adamlab/kahan.hpp"
#include "adamlab/rng.hpp"
#include "adamlab/trajectory.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace adamlab;

namespace {

HyperParams fig1_hyper() {
  HyperParams h;
  h.beta1 = 0.1;
  h.beta2 = 0.1;
  h.lambda_m = 1.0 - 1e-8;
  h.lambda_g = 1.0 - 1e-8;
  h.T = 200;
  return h;
}

bool states_identical(const TrajectoryState& a, const TrajectoryState& b) {
  return std::memcmp(&a, &b, sizeof(TrajectoryState)) == 0;
}

std::vector<double> fuzz_gradients(std::uint64_t seed, std::int64_t n,
                                   bool nonneg = true) {
  CellRng rng(seed);
  std::vector<double> g(static_cast<std::size_t>(n));
  for (double& v : g) {
    v = rng.positive_unit();
    if (!nonneg && rng.coin()) v = -v;
  }
  return g;
}

}  // namespace

TEST_CASE("first step with beta = 0.5 and unit gradient") {
  HyperParams h;
  h.beta1 = 0.5;
  h.beta2 = 0.5;
  h.lambda_m = 1.0;
  h.lambda_g = 1.0;
  const TrajectoryState st = step(std::nullopt, 1.0, h);
  CHECK(st.t == 1);
  CHECK(st.m == 0.5);
  CHECK(st.v == 0.5);
  CHECK(st.m_hat == 1.0);
  CHECK(st.v_hat == 1.0);
  CHECK(st.s_running == 1.0);
  CHECK(st.g_norm_sq_running == 1.0);
}

TEST_CASE("s_1 equals |g_1| for any hyperparameters") {
  const double betas[] = {0.0, 0.1, 0.25, 0.5, 0.9, 0.99};
  for (double b1 : betas) {
    for (double b2 : betas) {
      HyperParams h;
      h.beta1 = b1;
      h.beta2 = b2;
      h.lambda_m = 0.7;  // lambda powers are 1 at t = 1, so they cannot matter
      h.lambda_g = 0.3;
      const TrajectoryState st = step(std::nullopt, -3.0, h);
      CHECK(st.s_running == doctest::Approx(3.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("s_10 matches the frozen extended-precision value") {
  // Independent 60-digit evaluation of the recurrence with exact decimal
  // inputs gives s_10 = 2.96389314725775826083161701964...
  const Trace trace = run_trace(fig1_hyper(), InvSqrtSource{}, 10);
  const double expected = 2.963893147257758260831617;
  CHECK(std::abs(trace.s_final() - expected) / expected < 1e-12);
}

TEST_CASE("T = 1 inverse-sqrt trace has s = 1") {
  HyperParams h;
  const Trace trace = run_trace(h, InvSqrtSource{}, 1);
  CHECK(trace.length() == 1);
  CHECK(trace.s_final() == 1.0);
}

TEST_CASE("beta = 0 limit semantics: constant gradient") {
  HyperParams h;
  h.beta1 = 0.0;
  h.beta2 = 0.0;
  const Trace trace = run_trace(h, ConstantSource{1.0}, 4);
  for (const TrajectoryState& st : trace.steps) {
    CHECK(st.m_hat == st.g);
    CHECK(st.v_hat == st.g * st.g);
  }
  // s_4 = 1 + 1/sqrt(2) + 1/sqrt(3) + 1/2 (frozen from 60-digit evaluation).
  CHECK(trace.s_final() == doctest::Approx(2.784457050376173).epsilon(1e-14));
}

TEST_CASE("step index bookkeeping and bit-for-bit recomputability") {
  HyperParams h;
  h.beta1 = 0.7;
  h.beta2 = 0.95;
  h.lambda_m = 0.999;
  h.lambda_g = 0.98;
  const std::vector<double> g = fuzz_gradients(41, 60, /*nonneg=*/false);
  Trace trace = run_trace_values(h, g);
  REQUIRE(trace.length() == 60);
  for (std::int64_t i = 0; i < trace.length(); ++i)
    CHECK(trace.steps[static_cast<std::size_t>(i)].t == i + 1);
  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    const TrajectoryState redone =
        step(trace.steps[i - 1], g[i], h);
    CHECK(states_identical(redone, trace.steps[i]));
  }
}

TEST_CASE("determinism: identical inputs give bit-identical traces") {
  HyperParams h;
  h.beta1 = 0.42;
  h.beta2 = 0.9;
  const UniformRandomSource src{-1.0, 1.0, 777};
  const Trace a = run_trace(h, src, 300);
  const Trace b = run_trace(h, src, 300);
  REQUIRE(a.length() == b.length());
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    CHECK(states_identical(a.steps[i], b.steps[i]));
}

TEST_CASE("error paths") {
  HyperParams h;
  CHECK_THROWS_AS((void)step(std::nullopt, 0.0, h), UndefinedSeriesError);
  CHECK_THROWS_AS((void)step(std::nullopt, std::nan(""), h), std::invalid_argument);
  CHECK_NOTHROW((void)step(std::nullopt, 0.0, h, StepOptions{.accumulate_s = false}));

  HyperParams bad = h;
  bad.lambda_m = 0.0;
  CHECK_THROWS_AS((void)step(std::nullopt, 1.0, bad), std::invalid_argument);
  bad = h;
  bad.beta1 = 1.0;
  CHECK_THROWS_AS((void)step(std::nullopt, 1.0, bad), std::invalid_argument);

  // Propagates the offending step index.
  std::vector<double> g{1.0, 2.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_WITH_AS((void)run_trace_values(h, g), doctest::Contains("step 3"),
                       std::invalid_argument);
}

TEST_CASE("lambda_m acts on the history term, lambda_g on the gradient weight") {
  HyperParams h;
  h.beta1 = 0.5;
  h.beta2 = 0.5;
  h.lambda_m = 0.5;
  h.lambda_g = 1.0;
  const std::vector<double> g{1.0, 1.0};
  CHECK(run_trace_values(h, g).back().m == 0.625);  // 0.5*0.5*0.5 + 0.5
  h.lambda_m = 1.0;
  h.lambda_g = 0.5;
  CHECK(run_trace_values(h, g).back().m == 1.0);  // 0.5*0.5 + (1-0.25)
}

TEST_CASE("EMA contraction: nonnegative gradients, lambda = 1") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CellRng rng(seed);
    HyperParams h;
    h.beta1 = rng.uniform(0.0, 0.99);
    h.beta2 = rng.uniform(0.0, 0.99);
    h.lambda_m = 1.0;
    h.lambda_g = 1.0;
    const std::vector<double> g = fuzz_gradients(seed + 1000, 200);
    const Trace trace = run_trace_values(h, g);
    KahanAccumulator m_sq;
    for (const TrajectoryState& st : trace.steps) {
      CHECK(st.m >= 0.0);
      m_sq.add(st.m * st.m);
    }
    CHECK(std::sqrt(m_sq.value()) <=
          std::sqrt(trace.back().g_norm_sq_running) * (1.0 + 1e-12));
  }
}

TEST_CASE("shrinkage: lowering lambda_m never increases s_T") {
  const double lambdas[] = {1.0, 0.999, 0.9, 0.5, 0.1};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::vector<double> g = fuzz_gradients(seed + 99, 150);
    double previous = std::numeric_limits<double>::infinity();
    for (double lm : lambdas) {
      HyperParams h;
      h.beta1 = 0.6;
      h.beta2 = 0.8;
      h.lambda_m = lm;
      h.lambda_g = 1.0;
      const double s = run_trace_values(h, g).s_final();
      CHECK(s <= previous * (1.0 + 1e-12));
      previous = s;
    }
  }
}

TEST_CASE("double path tracks the 50-digit oracle at T = 500") {
  HyperParams h = fig1_hyper();
  const std::vector<double> g = fuzz_gradients(7, 500, /*nonneg=*/false);
  CHECK(testing::oracle_relative_error(h, g) < 1e-12);
}

TEST_CASE("theta_update") {
  HyperParams h;
  h.eta = 0.1;

  SUBCASE("zero update leaves theta unchanged") {
    const std::vector<double> theta{1.0, -2.0, 3.0};
    const std::vector<double> m_hat{0.0, 0.0, 0.0};
    const std::vector<double> v_hat{1.0, 2.0, 3.0};
    CHECK(theta_update(theta, m_hat, v_hat, 5, h, 0.0) == theta);
  }
  SUBCASE("unit case: eta/sqrt(1) * 1/1") {
    const std::vector<double> next =
        theta_update(std::vector{1.0}, std::vector{1.0}, std::vector{1.0}, 1, h, 0.0);
    CHECK(next == std::vector{0.9});
  }
  SUBCASE("worked arithmetic at t = 4") {
    HyperParams unit = h;
    unit.eta = 1.0;
    const std::vector<double> next =
        theta_update(std::vector{0.0}, std::vector{2.0}, std::vector{4.0}, 4, unit, 0.0);
    CHECK(next == std::vector{-0.5});
  }
  SUBCASE("division-by-zero is signalled, not silently produced") {
    CHECK_THROWS_AS((void)theta_update(std::vector{0.0}, std::vector{1.0},
                                       std::vector{0.0}, 1, h, 0.0),
                    std::domain_error);
    CHECK_NOTHROW((void)theta_update(std::vector{0.0}, std::vector{1.0},
                                     std::vector{0.0}, 1, h, 1e-8));
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS((void)theta_update(std::vector{0.0, 1.0}, std::vector{1.0},
                                       std::vector{1.0}, 1, h, 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("gradient sources") {
  SUBCASE("file source skips comments and blank lines") {
    const auto path = std::filesystem::temp_directory_path() / "adamlab_grad_test.txt";
    {
      std::ofstream out(path);
      out << "# header comment\n1.5\n\n  -2.25\n# tail\n0.125\n";
    }
    const std::vector<double> g = materialize(FileSource{path}, 3);
    CHECK(g == std::vector{1.5, -2.25, 0.125});
    CHECK_THROWS_AS((void)materialize(FileSource{path}, 4), IoError);
    std::filesystem::remove(path);
  }
  SUBCASE("missing file is an I/O error") {
    CHECK_THROWS_AS((void)materialize(FileSource{"/nonexistent/g.txt"}, 1), IoError);
  }
  SUBCASE("spec strings round-trip") {
    CHECK(describe(parse_source_spec("invsqrt")) == "invsqrt");
    CHECK(describe(parse_source_spec("constant:2.5")) == "constant:2.5");
    CHECK(describe(parse_source_spec("uniform:0,1,42")) == "uniform:0,1,42");
    CHECK_THROWS_AS((void)parse_source_spec("bogus"), std::invalid_argument);
  }
  SUBCASE("uniform stays in (lo, hi] and is seed-deterministic") {
    const UniformRandomSource src{-1.0, 1.0, 5};
    const std::vector<double> a = materialize(src, 1000);
    const std::vector<double> b = materialize(src, 1000);
    CHECK(a == b);
    for (double v : a) {
      CHECK(v > -1.0);
      CHECK(v <= 1.0);
    }
  }
}
