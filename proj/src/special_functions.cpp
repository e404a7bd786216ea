#include "zzbound/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "zzbound/errors.hpp"

namespace zzb {
namespace {

// Acklam's rational approximation to the inverse normal CDF (~1.15e-9
// relative before refinement).
double inv_norm_cdf_acklam(double u) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  constexpr double phigh = 1.0 - plow;

  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (u > phigh) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = u - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double inv_norm_cdf(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("inv_norm_cdf requires u in (0, 1)");
  }
  double x = inv_norm_cdf_acklam(u);
  // One Halley step on f(x) = Phi(x) - u using Phi(x) = erfc(-x/sqrt2)/2.
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  const double e = 0.5 * std::erfc(-x * inv_sqrt2) - u;
  const double pdf =
      std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (pdf > 0.0) {
    const double r = e / pdf;
    x -= r / (1.0 + 0.5 * x * r);
  }
  return x;
}

double erf_inv(double y) {
  if (!(y > -1.0 && y < 1.0)) {
    throw DomainError("erf_inv requires y in (-1, 1)");
  }
  return inv_norm_cdf(0.5 * (y + 1.0)) / std::numbers::sqrt2;
}

}  // namespace zzb
