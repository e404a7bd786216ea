// Lower bounds on the weighted RMS phase-estimation error.
//
// Conventions: x0 = pi/(2 H) is the Heisenberg length scale built from the
// mean generator H above its ground level; delta0 = pi/(2 dH) the analogue
// built from the generator standard deviation; t0 = W/x0 the dimensionless
// ratio of prior width to Heisenberg scale.  The speed-limit bracket
// 1 - sqrt(1 - alpha_inverse(t)) is evaluated as 1 - sin(pi sqrt(t)/2),
// which is the same function in exact arithmetic but avoids the cancellation
// in sqrt(1 - cos^2).
#pragma once

#include <string>

#include "zzbound/prior.hpp"
#include "zzbound/quadrature.hpp"
#include "zzbound/speed_limit.hpp"

namespace zzb {

enum class BoundKind {
  kDirectZZ,
  kMainQsl,
  kAppendixQsl,
  kVarianceBhatta,
  kUniformClosedForm,
  kLpiBenchmark,
  kHpiLimit,
};

std::string bound_kind_name(BoundKind kind);

struct BoundResult {
  double value = 0.0;         // lower bound on the weighted RMS error
  double err_estimate = 0.0;  // propagated quadrature error
  double t0 = 0.0;            // W / x0 (or W / delta0); NaN if not applicable
  double x0_or_delta0 = 0.0;  // the length scale used; NaN if not applicable
  BoundKind kind = BoundKind::kMainQsl;
};

// sqrt{ 1/2 \int_0^inf dz z E(z) [1 - sqrt(1 - F(z))] } with a pluggable
// fidelity model; the z-integral is truncated where E or the bracket
// vanishes identically.
BoundResult zz_bound_direct(const Prior& prior, const FidelityModel& fidelity,
                            const QuadratureConfig& quad);

// sqrt{ x0^2/2 \int_0^1 dt t E(x0 t) [1 - sqrt(1 - alpha_inverse(t))] }.
BoundResult main_lower_bound(const Prior& prior, double h_mean,
                             const QuadratureConfig& quad);

// Uniform-prior closed form x0 sqrt{ [A(t0) - B(t0)/t0] / 2 }.
BoundResult uniform_closed_form(double t0, double h_mean,
                                const QuadratureConfig& quad);

// A(t0) = \int_0^min(t0,1) t   [1 - sqrt(1 - alpha_inverse(t))] dt and
// B(t0) = \int_0^min(t0,1) t^2 [1 - sqrt(1 - alpha_inverse(t))] dt.
IntegrationResult constant_A_t0(double t0, const QuadratureConfig& quad);
IntegrationResult constant_B_t0(double t0, const QuadratureConfig& quad);

// A = A(1): the low-prior-information constant of the main bound.
double constant_A(const QuadratureConfig& quad);

// A' = 1/2 - 4/pi^2, analytically; and the quadrature of
// \int_0^1 t [1 - sin(pi t / 2)] dt, which must match to 1e-8.
double constant_A_prime();
double constant_A_prime_quadrature(const QuadratureConfig& quad);

// Prior-independent Heisenberg-scaling benchmark x0 sqrt(A/2).
BoundResult lpi_benchmark(double h_mean, const QuadratureConfig& quad);

// High-prior-information limit for single-mode priors:
// sqrt(variance + (mode - mean)^2); always >= the prior standard deviation.
double hpi_limit_single_mode(const Prior& prior, const QuadratureConfig& quad);

// Generic high-prior-information coefficient sqrt(\int_0^inf z E(z) dz / 2)
// divided by W; valid for any prior (equals hpi_limit_single_mode / W for
// single-mode priors).
double hpi_coefficient(const Prior& prior, const QuadratureConfig& quad);

// Appendix-form bound
// sqrt{ x0^2/4 \int_0^1 dt t \int dx [p(x) + p(x + x0 t)]
//       [1 - sqrt(1 - 4 p(x) p(x + x0 t) / (p(x) + p(x + x0 t))^2
//                   alpha_inverse(t))] },
// with the inner integrand defined as 0 wherever both densities vanish.
// The inner integral runs with 10x tighter tolerances; its residual is
// folded into the reported error estimate.
BoundResult appendix_bound(const Prior& prior, double h_mean,
                           const QuadratureConfig& quad);

// Variance-based bound
// sqrt{ delta0^2/2 \int_0^1 dt t E(delta0 t) [1 - sin(pi t / 2)] }.
BoundResult variance_bound(const Prior& prior, double h_std,
                           const QuadratureConfig& quad);

}  // namespace zzb
