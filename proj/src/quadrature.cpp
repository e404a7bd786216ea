#include "zzbound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "zzbound/errors.hpp"

namespace zzb {
namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the shared nodes (indices 0, 2, 4, 6).  Standard
// published values, 17 significant digits.
constexpr double kKronrodX[8] = {
    0.00000000000000000e+00, 2.07784955007898468e-01, 4.05845151377397167e-01,
    5.86087235467691130e-01, 7.41531185599394440e-01, 8.64864423359769073e-01,
    9.49107912342758525e-01, 9.91455371120812639e-01,
};
constexpr double kKronrodW[8] = {
    2.09482141084727828e-01, 2.04432940075298892e-01, 1.90350578064785410e-01,
    1.69004726639267903e-01, 1.40653259715525919e-01, 1.04790010322250184e-01,
    6.30920926299785533e-02, 2.29353220105292250e-02,
};
constexpr double kGaussW[4] = {
    4.17959183673469388e-01, 3.81830050505118945e-01, 2.79705391489276668e-01,
    1.29484966168869693e-01,
};

struct Panel {
  double a;
  double b;
  double value;
  double err;
};

// One Gauss-Kronrod 7/15 evaluation over [a, b].  The error estimate is the
// conservative |K15 - G7| difference; for the smooth integrands in this
// library it overestimates the K15 error, which keeps propagated error bars
// honest.
Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double kron = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    double fsum;
    if (i == 0) {
      fsum = f(c);
    } else {
      const double dx = h * kKronrodX[i];
      fsum = f(c - dx) + f(c + dx);
    }
    if (!std::isfinite(fsum)) {
      throw NumericalError("integrand evaluated to a non-finite value", 0.0,
                           std::numeric_limits<double>::infinity());
    }
    kron += kKronrodW[i] * fsum;
    if (i % 2 == 0) gauss += kGaussW[i / 2] * fsum;
  }
  kron *= h;
  gauss *= h;
  return Panel{a, b, kron, std::abs(kron - gauss)};
}

double panel_sum_sorted(std::vector<Panel>& panels, double* err_out) {
  std::sort(panels.begin(), panels.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
  double value = 0.0;
  double err = 0.0;
  for (const Panel& p : panels) {
    value += p.value;
    err += p.err;
  }
  *err_out = err;
  return value;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw InvalidArgumentError("abs_tol must be positive and finite");
  }
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw InvalidArgumentError("rel_tol must be positive and finite");
  }
  if (max_subdivisions < 1) {
    throw InvalidArgumentError("max_subdivisions must be >= 1");
  }
  if (!(improper_cutoff_sigmas >= 6.0)) {
    throw InvalidArgumentError("improper_cutoff_sigmas must be >= 6");
  }
}

QuadratureConfig QuadratureConfig::tightened(
    double factor, std::vector<double> inner_breakpoints) const {
  QuadratureConfig out = *this;
  out.abs_tol *= factor;
  out.rel_tol *= factor;
  out.breakpoints = std::move(inner_breakpoints);
  return out;
}

QuadratureConfig QuadratureConfig::with_breakpoints(
    std::vector<double> pts) const {
  QuadratureConfig out = *this;
  out.breakpoints = std::move(pts);
  return out;
}

IntegrationResult integrate(const std::function<double(double)>& f, double a,
                            double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgumentError("integration limits must be finite");
  }
  if (a > b) {
    throw InvalidArgumentError("integration requires a <= b");
  }
  if (a == b) return {0.0, 0.0};

  // Seed panels: split at interior breakpoints first.
  std::set<double> edges{a, b};
  for (double p : cfg.breakpoints) {
    if (std::isfinite(p) && p > a && p < b) edges.insert(p);
  }
  std::vector<Panel> panels;
  panels.reserve(cfg.breakpoints.size() + 8);
  double prev = a;
  for (auto it = std::next(edges.begin()); it != edges.end(); ++it) {
    panels.push_back(gk15(f, prev, *it));
    prev = *it;
  }

  for (;;) {
    double total = 0.0;
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      total_err += panels[i].err;
      const Panel& w = panels[worst];
      // Largest error wins; ties go to the smaller left endpoint so the
      // refinement order (and therefore the result) is deterministic.
      if (panels[i].err > w.err ||
          (panels[i].err == w.err && panels[i].a < w.a)) {
        worst = i;
      }
    }
    const double goal = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (total_err <= goal) {
      IntegrationResult res;
      res.value = panel_sum_sorted(panels, &res.err);
      return res;
    }
    if (static_cast<int>(panels.size()) >= cfg.max_subdivisions) {
      double err = 0.0;
      const double value = panel_sum_sorted(panels, &err);
      throw NumericalError(
          "adaptive quadrature exhausted max_subdivisions before reaching "
          "the requested tolerance",
          value, err);
    }
    const Panel broken = panels[worst];
    const double mid = 0.5 * (broken.a + broken.b);
    if (mid <= broken.a || mid >= broken.b) {
      // Interval no longer splittable in double precision.
      double err = 0.0;
      const double value = panel_sum_sorted(panels, &err);
      throw NumericalError(
          "adaptive quadrature hit floating-point resolution before "
          "reaching the requested tolerance",
          value, err);
    }
    panels[worst] = gk15(f, broken.a, mid);
    panels.push_back(gk15(f, mid, broken.b));
  }
}

double find_root_bisect(const std::function<double(double)>& g, double lo,
                        double hi, double tol) {
  if (!(tol > 0.0)) throw InvalidArgumentError("bisection tol must be > 0");
  if (!(lo <= hi)) throw InvalidArgumentError("bisection requires lo <= hi");
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) {
    throw NumericalError("bisection bracket does not contain a sign change",
                         0.5 * (lo + hi), hi - lo);
  }
  for (int iter = 0; iter < 400 && (hi - lo) > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

GoldenMaxResult golden_section_max(const std::function<double(double)>& f,
                                   double lo, double hi, double tol_x) {
  if (!(tol_x > 0.0)) {
    throw InvalidArgumentError("golden-section tol must be > 0");
  }
  if (!(lo < hi)) {
    throw InvalidArgumentError("golden-section requires lo < hi");
  }
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double mid0 = 0.5 * (lo + hi);

  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  double seen_min = std::min(f1, f2);
  double seen_max = std::max(f1, f2);
  double best_x = f1 >= f2 ? x1 : x2;
  double best_f = std::max(f1, f2);

  while (hi - lo > tol_x) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    }
    const double fn = f1 >= f2 ? f1 : f2;
    const double xn = f1 >= f2 ? x1 : x2;
    if (fn > best_f) {
      best_f = fn;
      best_x = xn;
    }
    seen_min = std::min(seen_min, std::min(f1, f2));
    seen_max = std::max(seen_max, std::max(f1, f2));
  }

  GoldenMaxResult res;
  const double spread = seen_max - seen_min;
  if (spread <= 1e-13 * std::max(1.0, std::abs(seen_max))) {
    res.x = mid0;
    res.value = f(mid0);
    res.flat = true;
    return res;
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = f(mid);
  if (fm >= best_f) {
    res.x = mid;
    res.value = fm;
  } else {
    res.x = best_x;
    res.value = best_f;
  }
  return res;
}

}  // namespace zzb
