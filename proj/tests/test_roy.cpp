#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "roycrit/counterexample.hpp"
#include "roycrit/cumulants.hpp"
#include "roycrit/errors.hpp"
#include "roycrit/montecarlo.hpp"
#include "roycrit/roy.hpp"
#include "roycrit/special_fn.hpp"
#include "test_support.hpp"

using namespace roycrit;

TEST_SUITE_BEGIN("roy");

TEST_CASE("CdfOracle guards") {
  CHECK_THROWS_AS(CdfOracle([](double) { return -0.1; }, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(CdfOracle([](double t) { return 1.0 - norm_cdf(t); }, -4.0,
                            4.0),
                  std::invalid_argument);  // decreasing
  CHECK_THROWS_AS(CdfOracle([](double t) { return norm_cdf(t); }, 2.0, 2.0),
                  std::invalid_argument);  // empty probe range
  const CdfOracle normal = CdfOracle::normal(1.0, 2.0);
  CHECK(normal.quantile(0.5) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(normal.quantile(norm_cdf(-1.0)) == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("sharpe") {
  const Horizon h(1.0, 0.0);
  CHECK(sharpe(Cumulants(0.001, 0.01), h).value ==
        doctest::Approx(0.1).epsilon(1e-15));
  CHECK(sharpe(Cumulants(0.02, 0.5), Horizon(10.0, 0.02)).value == 0.0);
  CHECK(sharpe(Cumulants(0.0007, 0.01), h).method_label() == "sharpe");
  // direct arithmetic at another triple
  CHECK(sharpe(Cumulants(0.007, 0.1), Horizon(1.0, 0.002)).value ==
        doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("roy_exact equals the Sharpe ratio under a normal oracle") {
  for (double mu : {-0.001, 0.0, 0.0005, 0.002}) {
    for (double sigma : {0.004, 0.01, 0.05}) {
      for (double r0 : {-0.002, 0.0, 0.001}) {
        const RiskScore s =
            roy_exact(CdfOracle::normal(mu, sigma), Horizon(1.0, r0));
        CHECK(s.value == doctest::Approx((mu - r0) / sigma).epsilon(1e-10));
        CHECK(!s.saturated);
      }
    }
  }
}

TEST_CASE("roy_exact at the median and under saturation") {
  const CdfOracle normal = CdfOracle::normal(0.003, 0.02);
  CHECK(roy_exact(normal, Horizon(1.0, 0.003)).value ==
        doctest::Approx(0.0).epsilon(1e-12));

  // loss probability exactly zero / one saturates instead of throwing
  const CdfOracle band(
      [](double t) { return std::clamp(t, 0.0, 1.0); }, -0.5, 1.5);
  const RiskScore hi = roy_exact(band, Horizon(1.0, -0.25));
  CHECK(hi.saturated);
  CHECK(std::isinf(hi.value));
  CHECK(hi.value > 0.0);
  const RiskScore lo = roy_exact(band, Horizon(1.0, 1.25));
  CHECK(lo.saturated);
  CHECK(lo.value < 0.0);
}

TEST_CASE("roy_exact horizon form divides by sqrt(n)") {
  // oracle for the mean of n draws of Normal(mu, sigma^2)
  const double mu = 0.001, sigma = 0.01, n = 60.0;
  const CdfOracle mean_oracle = CdfOracle::normal(mu, sigma / std::sqrt(n));
  const RiskScore s = roy_exact(mean_oracle, Horizon(n, 0.0));
  CHECK(s.value == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("roy_exact empirical vs analytic gamma oracle at 1e7 draws") {
  const double shape = 4.0, rate = 1.0, shift = -3.0;
  const std::size_t paths = 10000000;
  const EmpiricalSample sample =
      simulate({ShiftedGammaSpec{shape, rate, shift}, 1}, paths, 31);
  const Horizon h(1.0, 0.0);

  const RiskScore emp = roy_exact(empirical_cdf_oracle(sample), h);
  const CdfOracle analytic(
      [=](double t) {
        return test_support::shifted_gamma_cdf(shape, rate, shift, t);
      },
      shift, shift + 30.0);
  const RiskScore exact = roy_exact(analytic, h);

  // delta-method standard error of -Phi^{-1}(p_hat)
  const double p = analytic(0.0);
  const double se_p = std::sqrt(p * (1.0 - p) / static_cast<double>(paths));
  const double se_psi = se_p / norm_pdf(norm_quantile(p));
  CHECK(std::abs(emp.value - exact.value) < 3.0 * se_psi);
}

TEST_CASE("roy_exact is FOSD-consistent and location-scale equivariant") {
  // shifted copies of the same distribution
  const CdfOracle base = CdfOracle::normal(0.0, 1.0);
  const CdfOracle shifted = CdfOracle::normal(0.4, 1.0);
  for (double r0 : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
    CHECK(roy_exact(shifted, Horizon(1.0, r0)).value >=
          roy_exact(base, Horizon(1.0, r0)).value);
  }
  // y = a x + b with r0 mapped along
  const double a = 2.5, b = -0.03;
  const CdfOracle x = CdfOracle::normal(0.001, 0.01);
  const CdfOracle y(
      [=](double t) { return x((t - b) / a); },
      a * x.probe_lo() + b, a * x.probe_hi() + b);
  for (double r0 : {-0.01, 0.0, 0.002}) {
    const double sx = roy_exact(x, Horizon(1.0, r0)).value;
    const double sy = roy_exact(y, Horizon(1.0, a * r0 + b)).value;
    CHECK(sy == doctest::Approx(sx).epsilon(1e-9));
  }
}

TEST_CASE("roy_edgeworth_invert") {
  const Horizon h60(60.0, 0.0);
  SUBCASE("vanishing cumulants give the Sharpe ratio") {
    const Cumulants c(0.0007, 0.01, {0.0, 0.0, 0.0});
    for (int order = 0; order <= 3; ++order) {
      CHECK(roy_edgeworth_invert(c, h60, order).value ==
            doctest::Approx(0.07).epsilon(1e-12));
    }
  }
  SUBCASE("close to the quadratic closed form at the worked example") {
    const Cumulants c(0.0007, 0.01, {-1.0});
    const double inv = roy_edgeworth_invert(c, h60, 1).value;
    CHECK(std::abs(inv - 0.0719) < 2e-3);
  }
  SUBCASE("strictly increasing in mu") {
    double prev = -1e9;
    for (double mu = -0.002; mu <= 0.002; mu += 1e-4) {
      const Cumulants c(mu, 0.01, {-0.8, 1.0});
      const double v = roy_edgeworth_invert(c, h60, 2).value;
      CHECK(v > prev);
      prev = v;
    }
  }
  SUBCASE("breakdown outside (0,1) raises with the offending value") {
    const Cumulants c(1.2, 1.0, {2.0});
    try {
      roy_edgeworth_invert(c, Horizon(9.0, 0.0), 1);
      FAIL("expected ApproximationError");
    } catch (const ApproximationError& e) {
      CHECK(e.value() < 0.0);
    }
  }
  SUBCASE("method label carries the order") {
    const Cumulants c(0.0007, 0.01, {-1.0});
    CHECK(roy_edgeworth_invert(c, h60, 1).method_label() == "edgeworth-1");
  }
}

TEST_CASE("roy_cf_newton") {
  const Horizon h60(60.0, 0.0);
  SUBCASE("linear case converges in one evaluation") {
    const Cumulants c(0.0007, 0.01, {0.0});
    const RiskScore s = roy_cf_newton(c, h60, 2);
    CHECK(s.value == doctest::Approx(0.07).epsilon(1e-14));
    CHECK(s.iterations == 1);
    CHECK(s.converged);
    CHECK(s.residual <= 1e-12);
  }
  SUBCASE("paper worked examples") {
    const Cumulants c(0.0007, 0.01, {-1.0});
    const RiskScore a = roy_cf_newton(c, h60, 2);
    CHECK(std::abs(a.value - 0.0719) < 5e-4);
    CHECK(a.method_label() == "cf-newton-2");
    const RiskScore b = roy_cf_newton(c, Horizon(252.0, 0.0), 2);
    CHECK(std::abs(b.value - 0.0698) < 5e-4);
  }
  SUBCASE("agrees with the quadratic closed form wherever both succeed") {
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> snrs(-0.2, 0.2);
    std::uniform_real_distribution<double> zs(-2.0, 2.0);
    std::uniform_real_distribution<double> ns(10.0, 1000.0);
    int checked = 0;
    while (checked < 100) {
      const double s0 = snrs(gen);
      const double z3 = zs(gen);
      const double n = ns(gen);
      if (std::abs(z3) < 1e-3) continue;
      if (9.0 / (z3 * z3) + 1.0 / n - 6.0 * s0 / z3 < 0.0) continue;
      const Cumulants c(s0, 1.0, {z3});
      const Horizon h(n, 0.0);
      const RiskScore newton = roy_cf_newton(c, h, 2);
      const RiskScore quad = roy_cf_quadratic(c, h);
      CHECK(std::abs(newton.value - quad.value) < 1e-10);
      ++checked;
    }
  }
  SUBCASE("higher truncations stay consistent with edgeworth inversion") {
    const Cumulants c(0.0007, 0.01, {-0.6, 1.2, 2.0});
    const Horizon h(120.0, 0.0);
    const double reference = roy_edgeworth_invert(c, h, 2).value;
    for (int terms : {3, 4}) {
      const RiskScore s = roy_cf_newton(c, h, terms);
      CHECK(s.converged);
      CHECK(std::abs(s.value - reference) < 5e-4);
    }
  }
  SUBCASE("validation") {
    const Cumulants c(0.0007, 0.01, {-1.0});
    CHECK_THROWS_AS(roy_cf_newton(c, h60, 5), std::invalid_argument);
    CHECK_THROWS_AS(roy_cf_newton(c, h60, 3), std::invalid_argument);  // no z4
    CHECK_THROWS_AS(roy_cf_newton(c, h60, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(roy_cf_newton(c, h60, 2, 1e-12, 0), std::invalid_argument);
  }
  SUBCASE("unsolvable truncation raises SolverError with a trajectory") {
    // no real root of the two-term truncation: discriminant < 0
    const Cumulants c(0.8, 1.0, {2.0});
    try {
      roy_cf_newton(c, Horizon(100.0, 0.0), 2);
      FAIL("expected SolverError");
    } catch (const SolverError& e) {
      CHECK(e.iterations() > 0);
      CHECK(!e.trajectory().empty());
    }
  }
}

TEST_CASE("roy_cf_quadratic") {
  const Horizon h60(60.0, 0.0);
  const Horizon h252(252.0, 0.0);
  SUBCASE("paper worked examples, frozen") {
    const Cumulants c(0.0007, 0.01, {-1.0});
    const RiskScore a = roy_cf_quadratic(c, h60);
    CHECK(a.value == doctest::Approx(0.071915797457128652).epsilon(1e-13));
    CHECK(std::abs(a.value - 0.0719) < 5e-4);
    CHECK(a.root_branch == 1);  // -sign(zeta_3)
    const RiskScore b = roy_cf_quadratic(c, h252);
    CHECK(b.value == doctest::Approx(0.069848246081270703).epsilon(1e-13));
    CHECK(std::abs(b.value - 0.0698) < 5e-4);
  }
  SUBCASE("degenerate zeta_3 = 0 returns the Sharpe ratio") {
    const Cumulants c(0.0007, 0.01, {0.0});
    const RiskScore s = roy_cf_quadratic(c, h60);
    CHECK(s.value == doctest::Approx(0.07).epsilon(1e-15));
    CHECK(s.root_branch == 0);
  }
  SUBCASE("continuity as zeta_3 -> 0") {
    for (double z3 : {1e-8, -1e-8}) {
      for (double s0 : {-0.15, 0.02, 0.1}) {
        const Cumulants c(s0, 1.0, {z3});
        CHECK(std::abs(roy_cf_quadratic(c, h60).value - s0) < 1e-7);
      }
    }
  }
  SUBCASE("positive skew uses the other branch") {
    const Cumulants c(0.0007, 0.01, {1.0});
    CHECK(roy_cf_quadratic(c, h60).root_branch == -1);
  }
  SUBCASE("negative discriminant raises") {
    // 9/z3^2 + 1/n - 6 snr / z3 < 0 at z3 = 2, snr = 0.8
    const Cumulants c(0.8, 1.0, {2.0});
    try {
      roy_cf_quadratic(c, Horizon(100.0, 0.0));
      FAIL("expected NoRealRootError");
    } catch (const NoRealRootError& e) {
      CHECK(e.discriminant() < 0.0);
    }
  }
}

TEST_CASE("skew monotonicity matches the preference sign") {
  // snr sqrt(n) = 0.5 and 1.5 around zeta_3 = 0
  const double s0 = 0.07;
  for (double target_c : {0.5, 1.5}) {
    const double n = target_c * target_c / (s0 * s0);
    const Horizon h(n, 0.0);
    const double base = roy_cf_quadratic(Cumulants(s0, 1.0, {0.0}), h).value;
    const double up = roy_cf_quadratic(Cumulants(s0, 1.0, {0.1}), h).value;
    const double down =
        roy_cf_quadratic(Cumulants(s0, 1.0, {-0.1}), h).value;
    if (target_c < 1.0) {
      CHECK(up < base);
      CHECK(down > base);
    } else {
      CHECK(up > base);
      CHECK(down < base);
    }
  }
}

TEST_CASE("sr3_skew_adjusted") {
  const Horizon h(1.0, 0.0);
  SUBCASE("frozen arithmetic") {
    const Cumulants c(0.1, 1.0, {1.0});
    CHECK(sr3_skew_adjusted(c, h, 1.0).value ==
          doctest::Approx(0.10165300454651271).epsilon(1e-14));
  }
  SUBCASE("zero skew or zero preference reduce to the Sharpe ratio") {
    CHECK(sr3_skew_adjusted(Cumulants(0.1, 1.0, {0.0}), h, 1.0).value ==
          doctest::Approx(0.1));
    CHECK(sr3_skew_adjusted(Cumulants(0.1, 1.0, {1.0}), h, 0.0).value ==
          doctest::Approx(0.1));
  }
  SUBCASE("negative radicand is a domain error") {
    const Cumulants c(0.1, 1.0, {-40.0});
    CHECK_THROWS_AS(sr3_skew_adjusted(c, h, 1.0), std::domain_error);
  }
}

TEST_CASE("normal exactness across methods") {
  const Cumulants c(0.0012, 0.015, {0.0, 0.0, 0.0});
  const Horizon h(60.0, 0.0003);
  const double expected = snr(c, h);
  CHECK(sharpe(c, h).value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(sr3_skew_adjusted(c, h, 1.0).value ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(roy_cf_quadratic(c, h).value ==
        doctest::Approx(expected).epsilon(1e-12));
  for (int terms : {2, 3, 4}) {
    CHECK(roy_cf_newton(c, h, terms).value ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  for (int order = 0; order <= 3; ++order) {
    CHECK(roy_edgeworth_invert(c, h, order).value ==
          doctest::Approx(expected).epsilon(1e-10));
  }
  const CdfOracle mean_oracle = CdfOracle::normal(
      c.mean(), c.volatility() / std::sqrt(h.n_periods()));
  CHECK(roy_exact(mean_oracle, h).value ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_SUITE_END();
