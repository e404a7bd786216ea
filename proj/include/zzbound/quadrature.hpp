// Deterministic adaptive quadrature, bisection root-finding and
// golden-section maximization.  This is the single numerical engine behind
// every bound evaluator in the library.
#pragma once

#include <functional>
#include <vector>

namespace zzb {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  // Points at which the integrand is non-smooth; the interval is split there
  // before adaptive refinement begins.
  std::vector<double> breakpoints;
  // Truncation radius for infinite-domain integrals, in units of the prior
  // scale (sigma-equivalents).
  double improper_cutoff_sigmas = 12.0;

  void validate() const;  // throws InvalidArgumentError on bad settings

  // Returns a copy with tolerances tightened by `factor` (used for inner
  // integrals of nested quadrature) and breakpoints replaced.
  QuadratureConfig tightened(double factor,
                             std::vector<double> inner_breakpoints) const;
  QuadratureConfig with_breakpoints(std::vector<double> pts) const;
};

struct IntegrationResult {
  double value = 0.0;
  double err = 0.0;  // absolute error estimate
};

// Adaptive Gauss-Kronrod 7/15 integration of f over [a, b].
//
// The interval is first split at cfg.breakpoints, then the panel with the
// largest error estimate is bisected until the summed estimate satisfies
// err <= max(abs_tol, rel_tol * |value|) or the panel budget is exhausted
// (NumericalError carrying the best value and achieved error).  Identical
// inputs always produce bit-identical results: panels are refined in a
// deterministic order (largest error, ties broken by the smaller left
// endpoint) and the final sum runs over panels sorted by left endpoint.
IntegrationResult integrate(const std::function<double(double)>& f, double a,
                            double b, const QuadratureConfig& cfg);

// Bisection on [lo, hi]; requires g(lo) and g(hi) to bracket a sign change.
// Returns the bracket midpoint once the bracket width is <= tol.
double find_root_bisect(const std::function<double(double)>& g, double lo,
                        double hi, double tol);

struct GoldenMaxResult {
  double x = 0.0;
  double value = 0.0;
  // True when the objective was numerically flat across the whole search;
  // x is then the interval midpoint.
  bool flat = false;
};

// Golden-section maximization of f on [lo, hi] down to bracket width tol_x.
// Deterministic; suitable for unimodal objectives (including kinked peaks).
GoldenMaxResult golden_section_max(const std::function<double(double)>& f,
                                   double lo, double hi, double tol_x);

}  // namespace zzb
