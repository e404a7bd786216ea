// Adaptive quadrature, bisection and golden-section search against
// closed forms and the independent Simpson integrator.
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "zzbound/errors.hpp"
#include "zzbound/quadrature.hpp"

using zzb::QuadratureConfig;
using zzb::integrate;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("integrate reproduces elementary closed forms") {
  QuadratureConfig cfg;

  SUBCASE("sin over a full arch") {
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, kPi, cfg);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(r.value - 2.0) <= r.err + 1e-14);
  }
  SUBCASE("rational integrand") {
    const auto r =
        integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, cfg);
    CHECK(r.value == doctest::Approx(kPi / 4.0).epsilon(1e-13));
  }
  SUBCASE("degree-13 polynomial is exact for the embedded rule") {
    // A 15-point Kronrod rule integrates polynomials of degree 22 exactly;
    // x^13 on [0,1] must come out at machine precision in a single panel.
    const auto r = integrate([](double x) { return std::pow(x, 13); }, 0.0,
                             1.0, cfg);
    CHECK(r.value == doctest::Approx(1.0 / 14.0).epsilon(1e-15));
  }
  SUBCASE("agrees with the independent Simpson oracle") {
    const auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    const auto r = integrate(f, 0.0, 4.0, cfg);
    CHECK(r.value == doctest::Approx(oracle::simpson(f, 0.0, 4.0, 20000))
                         .epsilon(1e-10));
  }
  SUBCASE("empty and reversed-width intervals") {
    const auto r = integrate([](double x) { return x; }, 2.0, 2.0, cfg);
    CHECK(r.value == 0.0);
  }
}

TEST_CASE("breakpoints make kinked integrands exact") {
  QuadratureConfig cfg;
  cfg.breakpoints = {1.0 / 3.0};
  const auto r = integrate([](double x) { return std::abs(x - 1.0 / 3.0); },
                           0.0, 1.0, cfg);
  // \int_0^1 |x - 1/3| dx = 5/18 exactly.
  CHECK(r.value == doctest::Approx(5.0 / 18.0).epsilon(1e-15));
  CHECK(r.err <= 1e-12);

  // Breakpoints outside the interval are ignored.
  QuadratureConfig cfg2;
  cfg2.breakpoints = {-5.0, 0.5, 7.0};
  const auto r2 = integrate([](double x) { return x; }, 0.0, 1.0, cfg2);
  CHECK(r2.value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("integrate is deterministic") {
  QuadratureConfig cfg;
  const auto f = [](double x) { return std::sin(100.0 * x) / (1.0 + x); };
  const auto a = integrate(f, 0.0, 10.0, cfg);
  const auto b = integrate(f, 0.0, 10.0, cfg);
  CHECK(a.value == b.value);  // bit-identical
  CHECK(a.err == b.err);
}

TEST_CASE("error estimates are honest on hard integrands") {
  QuadratureConfig cfg;
  // Sharp peak; true value sqrt(pi)*erf well approximated by full-line value.
  const auto f = [](double x) { return std::exp(-1000.0 * (x - 0.3) * (x - 0.3)); };
  const auto r = integrate(f, 0.0, 1.0, cfg);
  const double truth = std::sqrt(kPi / 1000.0);
  CHECK(std::abs(r.value - truth) <= std::max(r.err, 1e-12) + 1e-14);
}

TEST_CASE("budget exhaustion raises NumericalError with the partial result") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-30;
  cfg.rel_tol = 1e-30;
  cfg.max_subdivisions = 4;
  bool thrown = false;
  try {
    integrate([](double x) { return std::sin(50.0 * x); }, 0.0, 3.0, cfg);
  } catch (const zzb::NumericalError& e) {
    thrown = true;
    CHECK(e.code() == zzb::ErrorCode::kNumerical);
    CHECK(std::isfinite(e.best_value()));
    CHECK(e.achieved_error() > 0.0);
    // The message carries the achieved-tolerance report.
    CHECK(std::string(e.what()).find("achieved error") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("non-finite integrand samples are rejected") {
  QuadratureConfig cfg;
  CHECK_THROWS_AS(
      integrate([](double x) { return 1.0 / x; }, -1.0, 1.0, cfg),
      zzb::NumericalError);
}

TEST_CASE("configuration validation") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  QuadratureConfig bad = cfg;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), zzb::InvalidArgumentError);
  bad = cfg;
  bad.rel_tol = -1e-8;
  CHECK_THROWS_AS(bad.validate(), zzb::InvalidArgumentError);
  bad = cfg;
  bad.max_subdivisions = 0;
  CHECK_THROWS_AS(bad.validate(), zzb::InvalidArgumentError);
  bad = cfg;
  bad.improper_cutoff_sigmas = 2.0;  // too small to be meaningful
  CHECK_THROWS_AS(bad.validate(), zzb::InvalidArgumentError);
}

TEST_CASE("tightened and with_breakpoints derive configs as documented") {
  QuadratureConfig cfg;
  cfg.breakpoints = {0.5};
  const QuadratureConfig inner = cfg.tightened(0.1, {0.25, 0.75});
  CHECK(inner.abs_tol == doctest::Approx(cfg.abs_tol * 0.1));
  CHECK(inner.rel_tol == doctest::Approx(cfg.rel_tol * 0.1));
  CHECK(inner.breakpoints == std::vector<double>{0.25, 0.75});

  const QuadratureConfig swapped = cfg.with_breakpoints({1.0, 2.0});
  CHECK(swapped.abs_tol == cfg.abs_tol);
  CHECK(swapped.breakpoints == std::vector<double>{1.0, 2.0});
}

TEST_CASE("bisection root finding") {
  const double root = zzb::find_root_bisect(
      [](double x) { return std::cos(x); }, 0.0, 2.0, 1e-13);
  CHECK(root == doctest::Approx(kPi / 2.0).epsilon(1e-12));

  SUBCASE("exact zero at an endpoint is returned directly") {
    const double r = zzb::find_root_bisect(
        [](double x) { return x - 1.0; }, 1.0, 2.0, 1e-13);
    CHECK(r == 1.0);
  }
  SUBCASE("missing sign change is a numerical error") {
    CHECK_THROWS_AS(zzb::find_root_bisect([](double x) { return x * x + 1.0; },
                                          -1.0, 1.0, 1e-13),
                    zzb::NumericalError);
  }
  SUBCASE("invalid tolerance is rejected") {
    CHECK_THROWS_AS(
        zzb::find_root_bisect([](double x) { return x; }, -1.0, 1.0, 0.0),
        zzb::InvalidArgumentError);
  }
}

TEST_CASE("golden-section maximization") {
  SUBCASE("smooth peak") {
    const auto r = zzb::golden_section_max(
        [](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-9);
    CHECK(r.x == doctest::Approx(0.3).epsilon(1e-7));
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(r.flat);
  }
  SUBCASE("kinked peak (intersection of two lines)") {
    const auto f = [](double x) { return std::min(x, (1.0 - x) / 2.0); };
    const auto r = zzb::golden_section_max(f, 0.0, 1.0, 1e-9);
    CHECK(r.x == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
  SUBCASE("flat objective reports the midpoint with the flat flag") {
    const auto r =
        zzb::golden_section_max([](double) { return 4.0; }, 2.0, 6.0, 1e-9);
    CHECK(r.flat);
    CHECK(r.x == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(r.value == 4.0);
  }
  SUBCASE("matches a dense-grid oracle on an asymmetric objective") {
    const auto f = [](double x) { return std::sin(x) * std::exp(-0.3 * x); };
    const auto r = zzb::golden_section_max(f, 0.0, 3.0, 1e-10);
    const auto [gx, gv] = oracle::grid_argmax(f, 0.0, 3.0, 1e-5);
    CHECK(r.x == doctest::Approx(gx).epsilon(1e-4));
    CHECK(r.value == doctest::Approx(gv).epsilon(1e-9));
  }
}
