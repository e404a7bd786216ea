// Prior distributions p(x) on the real line, their overlap function
// E(z) = \int min[p(x), p(x+z)] dx, and the geometric quantities (crossing
// point, mode, moments) used by the estimation bounds.
//
// Instances are immutable after construction; every operation is pure, so
// concurrent evaluation from multiple workers is safe.  Random sampling
// mutates only the caller-owned RngState.
#pragma once

#include <string>
#include <vector>

#include "zzbound/quadrature.hpp"
#include "zzbound/rng.hpp"

namespace zzb {

enum class PriorFamily {
  kUniform,
  kGaussian,
  kBimodalTwoBlock,
  kTriangularAsymmetric,
  kTabulated,
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double stddev = 0.0;
};

class Prior {
 public:
  // Uniform density 1/W on [c - W/2, c + W/2]; width scale = W.
  static Prior uniform(double center, double width);
  // Gaussian with mean mu, standard deviation sigma; width scale = sigma.
  static Prior gaussian(double mu, double sigma);
  // Two uniform blocks of width W/2 and height 1/W centered at -W/2 and
  // +W/2 (support [-3W/4, -W/4] u [W/4, 3W/4]); width scale = W.
  static Prior bimodal_two_block(double width);
  // Triangular on [a, b] with mode m in (a, b); width scale = its standard
  // deviation (test fixture for asymmetric single-mode behavior).
  static Prior triangular(double a, double b, double mode);
  // Piecewise-linear density through (x_i, p_i); renormalized to unit mass
  // on construction; width scale = its standard deviation.
  static Prior tabulated(std::vector<double> x, std::vector<double> p);
  // Two-column CSV (x, density), header line optional, strictly increasing x.
  static Prior tabulated_from_csv(const std::string& path);

  PriorFamily family() const { return family_; }
  const std::string& family_name() const { return family_name_; }

  // The prior-uncertainty scale W (see the per-family identification above).
  double width() const { return width_; }
  double mean() const { return moments_.mean; }
  double variance() const { return moments_.variance; }
  double stddev() const { return moments_.stddev; }
  Moments moments() const { return moments_; }
  bool single_mode() const { return single_mode_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  double support_lo() const { return support_lo_; }  // -inf for Gaussian
  double support_hi() const { return support_hi_; }

  // Density and cumulative distribution at x (closed forms for analytic
  // families, exact piecewise forms for Tabulated).
  double pdf(double x) const;
  double cdf(double x) const;
  // Inverse CDF; u in (0, 1).
  double quantile(double u) const;
  // Inverse-CDF sampling; deterministic given the RngState.
  double sample(RngState& rng) const;

  // Location of the density maximum.  Throws UnsupportedOperationError for
  // multi-modal densities.
  double mode() const;

  // Overlap E(z): analytic fast path where available, otherwise adaptive
  // quadrature with breakpoint splitting.  z >= 0.
  double overlap_E(double z, const QuadratureConfig& cfg) const;
  // Always takes the quadrature path (used to validate the fast paths).
  double overlap_E_generic(double z, const QuadratureConfig& cfg) const;

  // z beyond which E(z) < 1e-14 identically; finite for every family (the
  // Gaussian value uses the improper-integral cutoff).
  double overlap_support(const QuadratureConfig& cfg) const;

  // Unique point y0 with p(y0) = p(y0 + z) for strictly single-mode
  // densities; bisection on [mode - z, mode], where the sign change is
  // guaranteed.  Throws UnsupportedOperationError for multi-modal densities
  // and for plateaued ones (Uniform), where y0 is not unique.
  double crossing_point_y0(double z) const;

  // Single-mode overlap route: 1 - [cdf(y_m + z/2) - cdf(y_m - z/2)] with
  // y_m = y0 + z/2.  Must agree with overlap_E within 1e-6.
  double overlap_E_single_mode(double z) const;

 private:
  Prior() = default;
  void finalize_tabulated();

  PriorFamily family_ = PriorFamily::kUniform;
  std::string family_name_;
  double width_ = 1.0;
  Moments moments_;
  bool single_mode_ = true;
  bool plateaued_ = false;  // flat-topped density: crossing point not unique
  std::vector<double> breakpoints_;
  double support_lo_ = 0.0;
  double support_hi_ = 0.0;
  double mode_ = 0.0;

  // Family parameters.
  double p0_ = 0.0;  // uniform: center; gaussian: mu; triangular: a
  double p1_ = 0.0;  // uniform: W;      gaussian: sigma; triangular: b
  double p2_ = 0.0;  // triangular: m;   bimodal: W

  // Tabulated data.
  std::vector<double> tab_x_;
  std::vector<double> tab_p_;
  std::vector<double> tab_cdf_;
};

}  // namespace zzb
