// Inverse normal CDF and inverse error function against frozen
// high-precision values and round-trip identities.
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zzbound/errors.hpp"
#include "zzbound/special_functions.hpp"

using zzb::erf_inv;
using zzb::inv_norm_cdf;

namespace {
double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
}  // namespace

TEST_CASE("inv_norm_cdf spot values") {
  CHECK(inv_norm_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(inv_norm_cdf(0.975) ==
        doctest::Approx(oracle::kInvNormCdf975).epsilon(1e-13));
  // Symmetry.
  for (double u : {0.01, 0.1, 0.3, 0.45}) {
    CHECK(inv_norm_cdf(u) == doctest::Approx(-inv_norm_cdf(1.0 - u)).epsilon(1e-12));
  }
}

TEST_CASE("inv_norm_cdf round-trips through the normal CDF") {
  for (double u = 1e-10; u < 1.0; u = u < 0.1 ? u * 10.0 : u + 0.075) {
    const double x = inv_norm_cdf(u);
    CHECK(norm_cdf(x) == doctest::Approx(u).epsilon(1e-12));
  }
  // Extreme tails stay finite and ordered.
  CHECK(inv_norm_cdf(1e-300) < inv_norm_cdf(1e-200));
  CHECK(std::isfinite(inv_norm_cdf(1e-300)));
}

TEST_CASE("inv_norm_cdf domain errors") {
  CHECK_THROWS_AS(inv_norm_cdf(0.0), zzb::DomainError);
  CHECK_THROWS_AS(inv_norm_cdf(1.0), zzb::DomainError);
  CHECK_THROWS_AS(inv_norm_cdf(-0.25), zzb::DomainError);
  CHECK_THROWS_AS(inv_norm_cdf(1.25), zzb::DomainError);
}

TEST_CASE("erf_inv spot values and round trip") {
  CHECK(erf_inv(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(erf_inv(0.5) == doctest::Approx(oracle::kErfInv05).epsilon(1e-13));
  CHECK(erf_inv(0.95) == doctest::Approx(oracle::kErfInv095).epsilon(1e-13));
  for (double y = -0.95; y < 0.96; y += 0.1301) {
    CHECK(std::erf(erf_inv(y)) == doctest::Approx(y).epsilon(1e-12));
  }
  // Odd function.
  CHECK(erf_inv(-0.5) == doctest::Approx(-oracle::kErfInv05).epsilon(1e-13));
}

TEST_CASE("erf_inv domain errors") {
  CHECK_THROWS_AS(erf_inv(1.0), zzb::DomainError);
  CHECK_THROWS_AS(erf_inv(-1.0), zzb::DomainError);
  CHECK_THROWS_AS(erf_inv(2.0), zzb::DomainError);
}
