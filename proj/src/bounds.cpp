#include "zzbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "zzbound/errors.hpp"

namespace zzb {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Speed-limit bracket 1 - sqrt(1 - alpha_inverse(t)) = 1 - sin(pi sqrt(t)/2)
// for t in [0, 1] (exact identity; the sine form has no cancellation).
double bracket_qsl(double t) {
  return 1.0 - std::sin(std::numbers::pi * std::sqrt(t) / 2.0);
}

// Bracket of the variance-based bound: 1 - sin(pi t / 2).
double bracket_variance(double t) {
  return 1.0 - std::sin(std::numbers::pi * t / 2.0);
}

void require_scale(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InvalidArgumentError(std::string(what) + " must be > 0");
  }
}

// Positions (in z) at which E(z) is non-smooth; used to pre-split the outer
// integrals.  Pairwise knot distances, capped to keep the list small for
// dense tabulated priors (the adaptive engine handles any kinks the list
// misses, just less efficiently).
std::vector<double> overlap_kinks(const Prior& prior) {
  const auto& bp = prior.breakpoints();
  std::vector<double> out;
  if (bp.size() >= 2 && bp.size() <= 24) {
    for (std::size_t i = 0; i < bp.size(); ++i) {
      for (std::size_t j = i + 1; j < bp.size(); ++j) {
        out.push_back(std::abs(bp[j] - bp[i]));
      }
    }
  } else if (bp.size() > 24) {
    out.push_back(prior.support_hi() - prior.support_lo());
  }
  return out;
}

// value = scale * sqrt(I / 2) with the error bar propagated through the
// square root (conservative two-sided difference; stays finite at I -> 0).
BoundResult from_half_integral(double integral, double integral_err,
                               double scale, BoundKind kind, double t0,
                               double x0_or_delta0) {
  const double lo = std::max(0.0, integral - integral_err);
  const double hi = integral + integral_err;
  BoundResult r;
  r.value = scale * std::sqrt(std::max(0.0, integral) / 2.0);
  r.err_estimate = scale * 0.5 * (std::sqrt(hi / 2.0) - std::sqrt(lo / 2.0));
  r.t0 = t0;
  r.x0_or_delta0 = x0_or_delta0;
  r.kind = kind;
  return r;
}

}  // namespace

std::string bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::kDirectZZ:
      return "direct";
    case BoundKind::kMainQsl:
      return "main";
    case BoundKind::kAppendixQsl:
      return "appendix";
    case BoundKind::kVarianceBhatta:
      return "variance";
    case BoundKind::kUniformClosedForm:
      return "closed";
    case BoundKind::kLpiBenchmark:
      return "lpi";
    case BoundKind::kHpiLimit:
      return "hpi";
  }
  return "unknown";
}

BoundResult zz_bound_direct(const Prior& prior, const FidelityModel& fidelity,
                            const QuadratureConfig& quad) {
  double z_end = prior.overlap_support(quad);
  z_end = std::min(z_end, fidelity.support_end());
  if (!(z_end > 0.0)) {
    BoundResult r;
    r.kind = BoundKind::kDirectZZ;
    r.t0 = kNan;
    r.x0_or_delta0 = kNan;
    return r;
  }

  std::vector<double> pts = overlap_kinks(prior);
  const double f_end = fidelity.support_end();
  if (std::isfinite(f_end)) pts.push_back(f_end);

  const auto I = integrate(
      [&](double z) {
        const double e = prior.overlap_E(z, quad);
        if (e <= 0.0) return 0.0;
        const double f = fidelity(z);
        const double br = 1.0 - std::sqrt(std::max(0.0, 1.0 - f));
        return z * e * br;
      },
      0.0, z_end, quad.with_breakpoints(std::move(pts)));

  BoundResult r = from_half_integral(I.value, I.err, 1.0,
                                     BoundKind::kDirectZZ, kNan, kNan);
  return r;
}

BoundResult main_lower_bound(const Prior& prior, double h_mean,
                             const QuadratureConfig& quad) {
  require_scale(h_mean, "H");
  const double x0 = std::numbers::pi / (2.0 * h_mean);
  const double t0 = prior.width() / x0;

  std::vector<double> pts;
  for (double z : overlap_kinks(prior)) {
    const double t = z / x0;
    if (t > 0.0 && t < 1.0) pts.push_back(t);
  }
  const auto I = integrate(
      [&](double t) {
        const double e = prior.overlap_E(x0 * t, quad);
        if (e <= 0.0) return 0.0;
        return t * e * bracket_qsl(t);
      },
      0.0, 1.0, quad.with_breakpoints(std::move(pts)));

  return from_half_integral(I.value, I.err, x0, BoundKind::kMainQsl, t0, x0);
}

IntegrationResult constant_A_t0(double t0, const QuadratureConfig& quad) {
  require_scale(t0, "t0");
  const double m = std::min(t0, 1.0);
  return integrate([](double t) { return t * bracket_qsl(t); }, 0.0, m, quad);
}

IntegrationResult constant_B_t0(double t0, const QuadratureConfig& quad) {
  require_scale(t0, "t0");
  const double m = std::min(t0, 1.0);
  return integrate([](double t) { return t * t * bracket_qsl(t); }, 0.0, m,
                   quad);
}

double constant_A(const QuadratureConfig& quad) {
  return constant_A_t0(1.0, quad).value;
}

double constant_A_prime() {
  return 0.5 - 4.0 / (std::numbers::pi * std::numbers::pi);
}

double constant_A_prime_quadrature(const QuadratureConfig& quad) {
  return integrate([](double t) { return t * bracket_variance(t); }, 0.0, 1.0,
                   quad)
      .value;
}

BoundResult uniform_closed_form(double t0, double h_mean,
                                const QuadratureConfig& quad) {
  require_scale(t0, "t0");
  require_scale(h_mean, "H");
  const double x0 = std::numbers::pi / (2.0 * h_mean);
  const auto A = constant_A_t0(t0, quad);
  const auto B = constant_B_t0(t0, quad);
  const double I = A.value - B.value / t0;
  const double I_err = A.err + B.err / t0;
  return from_half_integral(I, I_err, x0, BoundKind::kUniformClosedForm, t0,
                            x0);
}

BoundResult lpi_benchmark(double h_mean, const QuadratureConfig& quad) {
  require_scale(h_mean, "H");
  const double x0 = std::numbers::pi / (2.0 * h_mean);
  const auto A = constant_A_t0(1.0, quad);
  BoundResult r = from_half_integral(A.value, A.err, x0,
                                     BoundKind::kLpiBenchmark,
                                     std::numeric_limits<double>::infinity(),
                                     x0);
  return r;
}

double hpi_limit_single_mode(const Prior& prior,
                             const QuadratureConfig& /*quad*/) {
  if (!prior.single_mode()) {
    throw UnsupportedOperationError(
        "high-prior-information limit requires a single-mode prior");
  }
  const double d = prior.mode() - prior.mean();
  return std::sqrt(prior.variance() + d * d);
}

double hpi_coefficient(const Prior& prior, const QuadratureConfig& quad) {
  const double z_end = prior.overlap_support(quad);
  const auto I = integrate(
      [&](double z) { return z * prior.overlap_E(z, quad); }, 0.0, z_end,
      quad.with_breakpoints(overlap_kinks(prior)));
  return std::sqrt(std::max(0.0, I.value) / 2.0) / prior.width();
}

BoundResult appendix_bound(const Prior& prior, double h_mean,
                           const QuadratureConfig& quad) {
  require_scale(h_mean, "H");
  const double x0 = std::numbers::pi / (2.0 * h_mean);
  const double t0 = prior.width() / x0;

  double lo = prior.support_lo();
  double hi = prior.support_hi();
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    const double r = quad.improper_cutoff_sigmas * prior.width();
    lo = prior.mean() - r;
    hi = prior.mean() + r;
  }

  std::vector<double> outer_pts;
  for (double z : overlap_kinks(prior)) {
    const double t = z / x0;
    if (t > 0.0 && t < 1.0) outer_pts.push_back(t);
  }

  double max_inner_err = 0.0;
  const auto outer = integrate(
      [&](double t) {
        const double shift = x0 * t;
        const double alpha = alpha_inverse(std::min(1.0, t));
        std::vector<double> inner_pts;
        inner_pts.reserve(2 * prior.breakpoints().size());
        for (double b : prior.breakpoints()) {
          inner_pts.push_back(b);
          inner_pts.push_back(b - shift);
        }
        const auto inner = integrate(
            [&](double x) {
              const double pa = prior.pdf(x);
              const double pb = prior.pdf(x + shift);
              const double s = pa + pb;
              if (s <= 0.0) return 0.0;  // both densities vanish: no event
              const double ratio = 4.0 * pa * pb / (s * s);
              const double arg = std::max(0.0, 1.0 - ratio * alpha);
              return s * (1.0 - std::sqrt(arg));
            },
            lo - shift, hi, quad.tightened(0.1, std::move(inner_pts)));
        max_inner_err = std::max(max_inner_err, inner.err);
        return t * inner.value;
      },
      0.0, 1.0, quad.with_breakpoints(std::move(outer_pts)));

  // Inner residuals enter the outer integral weighted by t <= 1; half the
  // peak residual bounds their integrated contribution.
  const double I = outer.value;
  const double I_err = outer.err + 0.5 * max_inner_err;
  const double v_lo = std::sqrt(std::max(0.0, I - I_err));
  const double v_hi = std::sqrt(std::max(0.0, I + I_err));
  BoundResult r;
  r.value = 0.5 * x0 * std::sqrt(std::max(0.0, I));
  r.err_estimate = 0.5 * x0 * 0.5 * (v_hi - v_lo);
  r.t0 = t0;
  r.x0_or_delta0 = x0;
  r.kind = BoundKind::kAppendixQsl;
  return r;
}

BoundResult variance_bound(const Prior& prior, double h_std,
                           const QuadratureConfig& quad) {
  require_scale(h_std, "dH");
  const double delta0 = std::numbers::pi / (2.0 * h_std);
  const double t0 = prior.width() / delta0;

  std::vector<double> pts;
  for (double z : overlap_kinks(prior)) {
    const double t = z / delta0;
    if (t > 0.0 && t < 1.0) pts.push_back(t);
  }
  const auto I = integrate(
      [&](double t) {
        const double e = prior.overlap_E(delta0 * t, quad);
        if (e <= 0.0) return 0.0;
        return t * e * bracket_variance(t);
      },
      0.0, 1.0, quad.with_breakpoints(std::move(pts)));

  return from_half_integral(I.value, I.err, delta0,
                            BoundKind::kVarianceBhatta, t0, delta0);
}

}  // namespace zzb
