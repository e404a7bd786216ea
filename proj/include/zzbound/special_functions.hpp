// Small set of special functions not covered by <cmath>: the inverse normal
// CDF and the inverse error function, both accurate to ~1e-15 relative.
#pragma once

namespace zzb {

// Inverse of the standard normal CDF.  Acklam's rational approximation
// refined by one Halley step on erfc; u must lie in (0, 1).
double inv_norm_cdf(double u);

// Inverse of erf; y must lie in (-1, 1).
double erf_inv(double y);

}  // namespace zzb
