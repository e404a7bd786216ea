#include "zzbound/prior.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "zzbound/errors.hpp"
#include "zzbound/special_functions.hpp"

namespace zzb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

Prior Prior::uniform(double center, double width) {
  require_finite(center, "center");
  if (!std::isfinite(width) || width <= 0.0) {
    throw InvalidArgumentError("uniform prior requires width > 0");
  }
  Prior p;
  p.family_ = PriorFamily::kUniform;
  p.family_name_ = "uniform";
  p.p0_ = center;
  p.p1_ = width;
  p.width_ = width;
  p.support_lo_ = center - width / 2.0;
  p.support_hi_ = center + width / 2.0;
  p.moments_ = {center, width * width / 12.0, width / std::sqrt(12.0)};
  p.single_mode_ = true;
  p.plateaued_ = true;
  p.mode_ = center;
  p.breakpoints_ = {p.support_lo_, p.support_hi_};
  return p;
}

Prior Prior::gaussian(double mu, double sigma) {
  require_finite(mu, "mu");
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw InvalidArgumentError("gaussian prior requires sigma > 0");
  }
  Prior p;
  p.family_ = PriorFamily::kGaussian;
  p.family_name_ = "gaussian";
  p.p0_ = mu;
  p.p1_ = sigma;
  p.width_ = sigma;
  p.support_lo_ = -kInf;
  p.support_hi_ = kInf;
  p.moments_ = {mu, sigma * sigma, sigma};
  p.single_mode_ = true;
  p.mode_ = mu;
  return p;
}

Prior Prior::bimodal_two_block(double width) {
  if (!std::isfinite(width) || width <= 0.0) {
    throw InvalidArgumentError("bimodal prior requires width > 0");
  }
  Prior p;
  p.family_ = PriorFamily::kBimodalTwoBlock;
  p.family_name_ = "bimodal";
  p.p2_ = width;
  p.width_ = width;
  p.support_lo_ = -0.75 * width;
  p.support_hi_ = 0.75 * width;
  // Each block contributes variance (W/2)^2/12 about its center +-W/2:
  // total = W^2/48 + W^2/4 = 13 W^2 / 48.
  p.moments_ = {0.0, 13.0 * width * width / 48.0,
                width * std::sqrt(13.0 / 48.0)};
  p.single_mode_ = false;
  p.breakpoints_ = {-0.75 * width, -0.25 * width, 0.25 * width, 0.75 * width};
  return p;
}

Prior Prior::triangular(double a, double b, double mode) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(mode, "mode");
  if (!(a < b) || !(mode > a) || !(mode < b)) {
    throw InvalidArgumentError(
        "triangular prior requires a < mode < b with a < b");
  }
  Prior p;
  p.family_ = PriorFamily::kTriangularAsymmetric;
  p.family_name_ = "triangular";
  p.p0_ = a;
  p.p1_ = b;
  p.p2_ = mode;
  p.support_lo_ = a;
  p.support_hi_ = b;
  const double mean = (a + b + mode) / 3.0;
  const double var =
      (a * a + b * b + mode * mode - a * b - a * mode - b * mode) / 18.0;
  p.moments_ = {mean, var, std::sqrt(var)};
  p.width_ = p.moments_.stddev;
  p.single_mode_ = true;
  p.mode_ = mode;
  p.breakpoints_ = {a, mode, b};
  return p;
}

Prior Prior::tabulated(std::vector<double> x, std::vector<double> p) {
  Prior out;
  out.family_ = PriorFamily::kTabulated;
  out.family_name_ = "tabulated";
  out.tab_x_ = std::move(x);
  out.tab_p_ = std::move(p);
  out.finalize_tabulated();
  return out;
}

Prior Prior::tabulated_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open tabulated-prior CSV: " + path);
  }
  std::vector<double> xs;
  std::vector<double> ps;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string cleaned = line;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream ss(cleaned);
    double x = 0.0, p = 0.0;
    if (!(ss >> x >> p)) {
      if (first) {
        first = false;  // optional header line
        continue;
      }
      throw InvalidArgumentError("malformed CSV line in " + path + ": " +
                                 line);
    }
    first = false;
    xs.push_back(x);
    ps.push_back(p);
  }
  return tabulated(std::move(xs), std::move(ps));
}

void Prior::finalize_tabulated() {
  const std::size_t n = tab_x_.size();
  if (n != tab_p_.size() || n < 2) {
    throw InvalidArgumentError(
        "tabulated prior needs >= 2 matching (x, density) pairs");
  }
  for (std::size_t i = 0; i < n; ++i) {
    require_finite(tab_x_[i], "tabulated x");
    if (!std::isfinite(tab_p_[i]) || tab_p_[i] < 0.0) {
      throw InvalidArgumentError("tabulated density must be finite and >= 0");
    }
    if (i > 0 && !(tab_x_[i] > tab_x_[i - 1])) {
      throw InvalidArgumentError("tabulated x values must strictly increase");
    }
  }
  // Trapezoid mass of the piecewise-linear density; renormalize to 1.
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    mass += (tab_x_[i + 1] - tab_x_[i]) * (tab_p_[i] + tab_p_[i + 1]) / 2.0;
  }
  if (!(mass > 0.0)) {
    throw InvalidArgumentError("tabulated density has zero total mass");
  }
  for (double& v : tab_p_) v /= mass;

  tab_cdf_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    tab_cdf_[i + 1] = tab_cdf_[i] + (tab_x_[i + 1] - tab_x_[i]) *
                                        (tab_p_[i] + tab_p_[i + 1]) / 2.0;
  }
  tab_cdf_.back() = 1.0;

  support_lo_ = tab_x_.front();
  support_hi_ = tab_x_.back();
  breakpoints_ = tab_x_;

  // Moments: p is piecewise linear, so x*p and x^2*p are piecewise cubic;
  // Gauss-Kronrod with knots as breakpoints integrates them exactly.
  QuadratureConfig cfg;
  cfg.breakpoints = tab_x_;
  const double mean =
      integrate([this](double x) { return x * pdf(x); }, support_lo_,
                support_hi_, cfg)
          .value;
  const double var =
      integrate(
          [this, mean](double x) {
            const double d = x - mean;
            return d * d * pdf(x);
          },
          support_lo_, support_hi_, cfg)
          .value;
  moments_ = {mean, var, std::sqrt(std::max(0.0, var))};
  width_ = moments_.stddev;
  if (!(width_ > 0.0)) {
    throw InvalidArgumentError("tabulated prior has zero variance");
  }

  // Mode count: collapse equal-density runs into direction symbols, pad
  // with a rise on the left and a fall on the right, then count rise->fall
  // transitions.  One transition = single-mode.
  std::vector<int> dirs{+1};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dp = tab_p_[i + 1] - tab_p_[i];
    if (dp == 0.0) continue;
    const int d = dp > 0.0 ? +1 : -1;
    if (dirs.back() != d) dirs.push_back(d);
  }
  if (dirs.back() != -1) dirs.push_back(-1);
  int maxima = 0;
  for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
    if (dirs[i] == +1 && dirs[i + 1] == -1) ++maxima;
  }
  single_mode_ = maxima <= 1;

  const double pmax = *std::max_element(tab_p_.begin(), tab_p_.end());
  std::size_t first_max = 0;
  std::size_t last_max = 0;
  bool seen = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (tab_p_[i] == pmax) {
      if (!seen) first_max = i;
      last_max = i;
      seen = true;
    }
  }
  plateaued_ = last_max > first_max;
  mode_ = 0.5 * (tab_x_[first_max] + tab_x_[last_max]);
}

// ---------------------------------------------------------------------------
// pdf / cdf / quantile / sample
// ---------------------------------------------------------------------------

double Prior::pdf(double x) const {
  require_finite(x, "x");
  switch (family_) {
    case PriorFamily::kUniform:
      return (x >= support_lo_ && x <= support_hi_) ? 1.0 / p1_ : 0.0;
    case PriorFamily::kGaussian: {
      const double u = (x - p0_) / p1_;
      return std::exp(-0.5 * u * u) /
             (p1_ * std::sqrt(2.0 * std::numbers::pi));
    }
    case PriorFamily::kBimodalTwoBlock: {
      const double w = p2_;
      const bool in_left = x >= -0.75 * w && x <= -0.25 * w;
      const bool in_right = x >= 0.25 * w && x <= 0.75 * w;
      return (in_left || in_right) ? 1.0 / w : 0.0;
    }
    case PriorFamily::kTriangularAsymmetric: {
      const double a = p0_, b = p1_, m = p2_;
      if (x < a || x > b) return 0.0;
      if (x <= m) return 2.0 * (x - a) / ((b - a) * (m - a));
      return 2.0 * (b - x) / ((b - a) * (b - m));
    }
    case PriorFamily::kTabulated: {
      if (x < support_lo_ || x > support_hi_) return 0.0;
      const auto it =
          std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
      std::size_t i = it == tab_x_.begin()
                          ? 0
                          : static_cast<std::size_t>(it - tab_x_.begin()) - 1;
      if (i + 1 >= tab_x_.size()) i = tab_x_.size() - 2;
      const double t = (x - tab_x_[i]) / (tab_x_[i + 1] - tab_x_[i]);
      return tab_p_[i] + t * (tab_p_[i + 1] - tab_p_[i]);
    }
  }
  throw Error(ErrorCode::kInternal, "unreachable prior family");
}

double Prior::cdf(double x) const {
  require_finite(x, "x");
  switch (family_) {
    case PriorFamily::kUniform:
      return clamp01((x - support_lo_) / p1_);
    case PriorFamily::kGaussian:
      return 0.5 * std::erfc(-(x - p0_) / (p1_ * std::numbers::sqrt2));
    case PriorFamily::kBimodalTwoBlock: {
      const double w = p2_;
      if (x <= -0.75 * w) return 0.0;
      if (x <= -0.25 * w) return (x + 0.75 * w) / w;
      if (x <= 0.25 * w) return 0.5;
      if (x <= 0.75 * w) return 0.5 + (x - 0.25 * w) / w;
      return 1.0;
    }
    case PriorFamily::kTriangularAsymmetric: {
      const double a = p0_, b = p1_, m = p2_;
      if (x <= a) return 0.0;
      if (x >= b) return 1.0;
      if (x <= m) return (x - a) * (x - a) / ((b - a) * (m - a));
      return 1.0 - (b - x) * (b - x) / ((b - a) * (b - m));
    }
    case PriorFamily::kTabulated: {
      if (x <= support_lo_) return 0.0;
      if (x >= support_hi_) return 1.0;
      const auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
      std::size_t i = static_cast<std::size_t>(it - tab_x_.begin()) - 1;
      if (i + 1 >= tab_x_.size()) i = tab_x_.size() - 2;
      const double dx = x - tab_x_[i];
      const double slope =
          (tab_p_[i + 1] - tab_p_[i]) / (tab_x_[i + 1] - tab_x_[i]);
      return clamp01(tab_cdf_[i] + tab_p_[i] * dx + 0.5 * slope * dx * dx);
    }
  }
  throw Error(ErrorCode::kInternal, "unreachable prior family");
}

double Prior::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("quantile requires u in (0, 1)");
  }
  switch (family_) {
    case PriorFamily::kUniform:
      return support_lo_ + u * p1_;
    case PriorFamily::kGaussian:
      return p0_ + p1_ * inv_norm_cdf(u);
    case PriorFamily::kBimodalTwoBlock: {
      const double w = p2_;
      if (u <= 0.5) return -0.75 * w + u * w;
      return 0.25 * w + (u - 0.5) * w;
    }
    case PriorFamily::kTriangularAsymmetric: {
      const double a = p0_, b = p1_, m = p2_;
      const double split = (m - a) / (b - a);
      if (u <= split) return a + std::sqrt(u * (b - a) * (m - a));
      return b - std::sqrt((1.0 - u) * (b - a) * (b - m));
    }
    case PriorFamily::kTabulated: {
      const auto it = std::upper_bound(tab_cdf_.begin(), tab_cdf_.end(), u);
      std::size_t i = it == tab_cdf_.begin()
                          ? 0
                          : static_cast<std::size_t>(it - tab_cdf_.begin()) - 1;
      if (i + 1 >= tab_cdf_.size()) i = tab_cdf_.size() - 2;
      const double r = u - tab_cdf_[i];
      const double seg = tab_x_[i + 1] - tab_x_[i];
      const double slope = (tab_p_[i + 1] - tab_p_[i]) / seg;
      double d;
      // Solve p_i d + slope d^2 / 2 = r with the cancellation-free root.
      const double disc = tab_p_[i] * tab_p_[i] + 2.0 * slope * r;
      const double denom = tab_p_[i] + std::sqrt(std::max(0.0, disc));
      if (denom > 0.0) {
        d = 2.0 * r / denom;
      } else if (slope > 0.0) {
        d = std::sqrt(2.0 * r / slope);
      } else {
        d = 0.0;
      }
      return tab_x_[i] + std::min(std::max(d, 0.0), seg);
    }
  }
  throw Error(ErrorCode::kInternal, "unreachable prior family");
}

double Prior::sample(RngState& rng) const { return quantile(rng.uniform01()); }

double Prior::mode() const {
  if (!single_mode_) {
    throw UnsupportedOperationError(
        "mode is not defined for multi-modal priors");
  }
  return mode_;
}

// ---------------------------------------------------------------------------
// Overlap function E(z)
// ---------------------------------------------------------------------------

double Prior::overlap_support(const QuadratureConfig& cfg) const {
  switch (family_) {
    case PriorFamily::kUniform:
      return p1_;
    case PriorFamily::kGaussian:
      return 2.0 * cfg.improper_cutoff_sigmas * p1_;
    case PriorFamily::kBimodalTwoBlock:
      return 1.5 * p2_;
    case PriorFamily::kTriangularAsymmetric:
      return p1_ - p0_;
    case PriorFamily::kTabulated:
      return support_hi_ - support_lo_;
  }
  throw Error(ErrorCode::kInternal, "unreachable prior family");
}

double Prior::overlap_E(double z, const QuadratureConfig& cfg) const {
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError("overlap requires z >= 0");
  }
  if (z == 0.0) return 1.0;
  switch (family_) {
    case PriorFamily::kUniform:
      return std::max(0.0, 1.0 - z / p1_);
    case PriorFamily::kGaussian:
      // \int min of two unit-mass normals separated by z.
      return std::erfc(z / (2.0 * std::numbers::sqrt2 * p1_));
    case PriorFamily::kBimodalTwoBlock: {
      // Shifted-support intersection measure over W: the same-block terms
      // decay over [0, W/2]; the cross-block term peaks again at z = W.
      const double w = p2_;
      const double same = 2.0 * std::max(0.0, w / 2.0 - z);
      const double cross = std::max(0.0, w / 2.0 - std::abs(z - w));
      return (same + cross) / w;
    }
    default:
      return overlap_E_generic(z, cfg);
  }
}

double Prior::overlap_E_generic(double z, const QuadratureConfig& cfg) const {
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError("overlap requires z >= 0");
  }
  if (z == 0.0) return 1.0;
  double lo = support_lo_;
  double hi = support_hi_ - z;
  if (family_ == PriorFamily::kGaussian) {
    const double r = cfg.improper_cutoff_sigmas * p1_;
    lo = p0_ - r;
    hi = p0_ + r - z;
  }
  if (!(lo < hi)) return 0.0;

  std::vector<double> pts;
  pts.reserve(2 * breakpoints_.size());
  for (double b : breakpoints_) {
    pts.push_back(b);
    pts.push_back(b - z);
  }
  const auto res = integrate(
      [this, z](double x) { return std::min(pdf(x), pdf(x + z)); }, lo, hi,
      cfg.with_breakpoints(std::move(pts)));
  return clamp01(res.value);
}

// ---------------------------------------------------------------------------
// Crossing point and the single-mode overlap route
// ---------------------------------------------------------------------------

double Prior::crossing_point_y0(double z) const {
  if (!single_mode_) {
    throw UnsupportedOperationError(
        "crossing point requires a single-mode prior");
  }
  if (plateaued_) {
    throw UnsupportedOperationError(
        "crossing point is not unique for plateau-topped densities");
  }
  if (!std::isfinite(z) || z <= 0.0) {
    throw DomainError("crossing point requires z > 0");
  }
  // For a single-mode density, p(y) - p(y+z) is <= 0 at y = mode - z (the
  // shifted argument sits at the mode) and >= 0 at y = mode, so the unique
  // crossing lies in [mode - z, mode].
  const double lo = mode_ - z;
  const double hi = mode_;
  auto g = [this, z](double y) { return pdf(y) - pdf(y + z); };
  const double glo = g(lo);
  const double ghi = g(hi);
  if (glo > 0.0 || ghi < 0.0) {
    throw NumericalError(
        "no sign change of p(y) - p(y+z) on the crossing bracket",
        0.5 * (lo + hi), hi - lo);
  }
  const double tol = 1e-13 * std::max(1.0, std::abs(mode_) + z);
  return find_root_bisect(g, lo, hi, tol);
}

double Prior::overlap_E_single_mode(double z) const {
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError("overlap requires z >= 0");
  }
  if (z == 0.0) return 1.0;
  const double y0 = crossing_point_y0(z);
  return clamp01(1.0 - (cdf(y0 + z) - cdf(y0)));
}

}  // namespace zzb
