// extern-C layer: translates between opaque handles / status codes and the
// C++ core.  Every entry point catches all exceptions; the message of the
// most recent failure is kept per thread for zzb_last_error().
#include "zzbound.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "zzbound/analysis.hpp"
#include "zzbound/bounds.hpp"
#include "zzbound/errors.hpp"
#include "zzbound/prior.hpp"
#include "zzbound/quadrature.hpp"
#include "zzbound/rng.hpp"
#include "zzbound/speed_limit.hpp"

#define ZZB_EXPORT __attribute__((visibility("default")))

namespace {

thread_local std::string g_last_error;

zzb_status set_error(zzb_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

zzb_status status_from(const zzb::Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case zzb::ErrorCode::kInvalidArgument:
      return ZZB_ERR_INVALID_ARGUMENT;
    case zzb::ErrorCode::kDomain:
      return ZZB_ERR_DOMAIN;
    case zzb::ErrorCode::kUnsupported:
      return ZZB_ERR_UNSUPPORTED;
    case zzb::ErrorCode::kNumerical:
      return ZZB_ERR_NUMERICAL;
    case zzb::ErrorCode::kIo:
      return ZZB_ERR_IO;
    default:
      return ZZB_ERR_INTERNAL;
  }
}

// Runs `fn` and converts exceptions into status codes.
template <typename Fn>
zzb_status guarded(Fn&& fn) {
  try {
    fn();
    return ZZB_OK;
  } catch (const zzb::Error& e) {
    return status_from(e);
  } catch (const std::bad_alloc&) {
    return set_error(ZZB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ZZB_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(ZZB_ERR_INTERNAL, "unknown exception");
  }
}

zzb::QuadratureConfig to_cpp(const zzb_quad_config* cfg) {
  zzb::QuadratureConfig out;
  if (cfg != nullptr) {
    out.abs_tol = cfg->abs_tol;
    out.rel_tol = cfg->rel_tol;
    out.max_subdivisions = cfg->max_subdivisions;
    out.improper_cutoff_sigmas = cfg->improper_cutoff_sigmas;
  }
  return out;
}

void fill(zzb_bound_result* out, const zzb::BoundResult& r) {
  out->value = r.value;
  out->err_estimate = r.err_estimate;
  out->t0 = r.t0;
  out->x0_or_delta0 = r.x0_or_delta0;
  out->kind = static_cast<int>(r.kind);
}

zzb::PriorFamily to_family(zzb_prior_family f) {
  switch (f) {
    case ZZB_PRIOR_UNIFORM:
      return zzb::PriorFamily::kUniform;
    case ZZB_PRIOR_GAUSSIAN:
      return zzb::PriorFamily::kGaussian;
    case ZZB_PRIOR_BIMODAL_TWO_BLOCK:
      return zzb::PriorFamily::kBimodalTwoBlock;
    case ZZB_PRIOR_TRIANGULAR:
      return zzb::PriorFamily::kTriangularAsymmetric;
    case ZZB_PRIOR_TABULATED:
      return zzb::PriorFamily::kTabulated;
  }
  throw zzb::InvalidArgumentError("unknown prior family id");
}

zzb::BoundKind to_kind(zzb_bound_kind k) {
  switch (k) {
    case ZZB_BOUND_DIRECT:
      return zzb::BoundKind::kDirectZZ;
    case ZZB_BOUND_MAIN:
      return zzb::BoundKind::kMainQsl;
    case ZZB_BOUND_APPENDIX:
      return zzb::BoundKind::kAppendixQsl;
    case ZZB_BOUND_VARIANCE:
      return zzb::BoundKind::kVarianceBhatta;
    case ZZB_BOUND_CLOSED_FORM:
      return zzb::BoundKind::kUniformClosedForm;
    case ZZB_BOUND_LPI_BENCHMARK:
      return zzb::BoundKind::kLpiBenchmark;
    case ZZB_BOUND_HPI_LIMIT:
      return zzb::BoundKind::kHpiLimit;
  }
  throw zzb::InvalidArgumentError("unknown bound kind id");
}

zzb_status require(bool ok, const char* what) {
  return ok ? ZZB_OK : set_error(ZZB_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

struct zzb_prior {
  zzb::Prior impl;
};
struct zzb_fidelity {
  zzb::FidelityModel impl;
};
struct zzb_rng {
  zzb::RngState impl;
};
struct zzb_scan {
  zzb::ScanResult impl;
};

extern "C" {

ZZB_EXPORT const char* zzb_last_error(void) { return g_last_error.c_str(); }

ZZB_EXPORT void zzb_set_thread_limit(int n) {
  zzb::internal::set_thread_limit(n);
}

ZZB_EXPORT zzb_quad_config zzb_quad_config_default(void) {
  zzb_quad_config cfg;
  zzb::QuadratureConfig d;
  cfg.abs_tol = d.abs_tol;
  cfg.rel_tol = d.rel_tol;
  cfg.max_subdivisions = d.max_subdivisions;
  cfg.improper_cutoff_sigmas = d.improper_cutoff_sigmas;
  return cfg;
}

/* ---------------------------- priors ------------------------------ */

ZZB_EXPORT zzb_status zzb_prior_create_uniform(double center, double width,
                                               zzb_prior** out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] { *out = new zzb_prior{zzb::Prior::uniform(center, width)}; });
}

ZZB_EXPORT zzb_status zzb_prior_create_gaussian(double mu, double sigma,
                                                zzb_prior** out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] { *out = new zzb_prior{zzb::Prior::gaussian(mu, sigma)}; });
}

ZZB_EXPORT zzb_status zzb_prior_create_bimodal(double width, zzb_prior** out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded(
      [&] { *out = new zzb_prior{zzb::Prior::bimodal_two_block(width)}; });
}

ZZB_EXPORT zzb_status zzb_prior_create_triangular(double a, double b,
                                                  double mode,
                                                  zzb_prior** out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded(
      [&] { *out = new zzb_prior{zzb::Prior::triangular(a, b, mode)}; });
}

ZZB_EXPORT zzb_status zzb_prior_create_tabulated(const double* x,
                                                 const double* density,
                                                 size_t n, zzb_prior** out) {
  if (auto s = require(out != nullptr && x != nullptr && density != nullptr,
                       "tabulated prior requires x, density and out")) {
    return s;
  }
  return guarded([&] {
    *out = new zzb_prior{zzb::Prior::tabulated(
        std::vector<double>(x, x + n), std::vector<double>(density, density + n))};
  });
}

ZZB_EXPORT zzb_status zzb_prior_create_from_csv(const char* path,
                                                zzb_prior** out) {
  if (auto s = require(out != nullptr && path != nullptr,
                       "path and out must not be null")) {
    return s;
  }
  return guarded(
      [&] { *out = new zzb_prior{zzb::Prior::tabulated_from_csv(path)}; });
}

ZZB_EXPORT void zzb_prior_destroy(zzb_prior* prior) { delete prior; }

ZZB_EXPORT zzb_status zzb_prior_pdf_cdf(const zzb_prior* prior, double x,
                                        double* pdf, double* cdf) {
  if (auto s = require(prior != nullptr && pdf != nullptr && cdf != nullptr,
                       "prior, pdf and cdf must not be null")) {
    return s;
  }
  return guarded([&] {
    *pdf = prior->impl.pdf(x);
    *cdf = prior->impl.cdf(x);
  });
}

ZZB_EXPORT zzb_status zzb_prior_moments(const zzb_prior* prior, double* mean,
                                        double* variance, double* stddev) {
  if (auto s = require(prior != nullptr, "prior must not be null")) return s;
  return guarded([&] {
    const zzb::Moments m = prior->impl.moments();
    if (mean) *mean = m.mean;
    if (variance) *variance = m.variance;
    if (stddev) *stddev = m.stddev;
  });
}

ZZB_EXPORT zzb_status zzb_prior_width(const zzb_prior* prior, double* width) {
  if (auto s = require(prior != nullptr && width != nullptr,
                       "prior and width must not be null")) {
    return s;
  }
  return guarded([&] { *width = prior->impl.width(); });
}

ZZB_EXPORT zzb_status zzb_prior_single_mode(const zzb_prior* prior,
                                            int* flag) {
  if (auto s = require(prior != nullptr && flag != nullptr,
                       "prior and flag must not be null")) {
    return s;
  }
  return guarded([&] { *flag = prior->impl.single_mode() ? 1 : 0; });
}

ZZB_EXPORT zzb_status zzb_prior_overlap(const zzb_prior* prior, double z,
                                        const zzb_quad_config* cfg,
                                        double* out) {
  if (auto s = require(prior != nullptr && out != nullptr,
                       "prior and out must not be null")) {
    return s;
  }
  return guarded([&] { *out = prior->impl.overlap_E(z, to_cpp(cfg)); });
}

ZZB_EXPORT zzb_status zzb_prior_overlap_single_mode(const zzb_prior* prior,
                                                    double z, double* out) {
  if (auto s = require(prior != nullptr && out != nullptr,
                       "prior and out must not be null")) {
    return s;
  }
  return guarded([&] { *out = prior->impl.overlap_E_single_mode(z); });
}

ZZB_EXPORT zzb_status zzb_prior_crossing_point(const zzb_prior* prior,
                                               double z, double* out) {
  if (auto s = require(prior != nullptr && out != nullptr,
                       "prior and out must not be null")) {
    return s;
  }
  return guarded([&] { *out = prior->impl.crossing_point_y0(z); });
}

/* ----------------------------- rng -------------------------------- */

ZZB_EXPORT zzb_status zzb_rng_create(uint64_t seed, zzb_rng** out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] { *out = new zzb_rng{zzb::RngState(seed)}; });
}

ZZB_EXPORT void zzb_rng_destroy(zzb_rng* rng) { delete rng; }

ZZB_EXPORT zzb_status zzb_prior_sample(const zzb_prior* prior, zzb_rng* rng,
                                       double* out) {
  if (auto s = require(prior != nullptr && rng != nullptr && out != nullptr,
                       "prior, rng and out must not be null")) {
    return s;
  }
  return guarded([&] { *out = prior->impl.sample(rng->impl); });
}

/* ------------------------ speed limit ----------------------------- */

ZZB_EXPORT zzb_status zzb_alpha_inverse(double t, double* out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] { *out = zzb::alpha_inverse(t); });
}

ZZB_EXPORT zzb_status zzb_fidelity_create(zzb_fidelity_kind kind,
                                          double scale, zzb_fidelity** out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    switch (kind) {
      case ZZB_FIDELITY_QSL:
        *out = new zzb_fidelity{zzb::FidelityModel::qsl_number_operator(scale)};
        return;
      case ZZB_FIDELITY_BHATTA:
        *out =
            new zzb_fidelity{zzb::FidelityModel::bhattacharyya_variance(scale)};
        return;
      case ZZB_FIDELITY_COHERENT:
        *out =
            new zzb_fidelity{zzb::FidelityModel::coherent_state_exact(scale)};
        return;
      case ZZB_FIDELITY_CONSTANT:
        *out = new zzb_fidelity{zzb::FidelityModel::constant(scale)};
        return;
    }
    throw zzb::InvalidArgumentError("unknown fidelity kind id");
  });
}

ZZB_EXPORT zzb_status zzb_fidelity_create_tabulated(const double* z,
                                                    const double* f, size_t n,
                                                    zzb_fidelity** out) {
  if (auto s = require(out != nullptr && z != nullptr && f != nullptr,
                       "tabulated fidelity requires z, f and out")) {
    return s;
  }
  return guarded([&] {
    *out = new zzb_fidelity{zzb::FidelityModel::tabulated(
        std::vector<double>(z, z + n), std::vector<double>(f, f + n))};
  });
}

ZZB_EXPORT zzb_status zzb_fidelity_create_from_csv(const char* path,
                                                   zzb_fidelity** out) {
  if (auto s = require(out != nullptr && path != nullptr,
                       "path and out must not be null")) {
    return s;
  }
  return guarded([&] {
    *out = new zzb_fidelity{zzb::FidelityModel::tabulated_from_csv(path)};
  });
}

ZZB_EXPORT void zzb_fidelity_destroy(zzb_fidelity* fidelity) {
  delete fidelity;
}

ZZB_EXPORT zzb_status zzb_fidelity_eval(const zzb_fidelity* fidelity,
                                        double z, double* out) {
  if (auto s = require(fidelity != nullptr && out != nullptr,
                       "fidelity and out must not be null")) {
    return s;
  }
  return guarded([&] { *out = fidelity->impl(z); });
}

/* ---------------------------- bounds ------------------------------ */

ZZB_EXPORT zzb_status zzb_bound_direct(const zzb_prior* prior,
                                       const zzb_fidelity* fidelity,
                                       const zzb_quad_config* cfg,
                                       zzb_bound_result* out) {
  if (auto s =
          require(prior != nullptr && fidelity != nullptr && out != nullptr,
                  "prior, fidelity and out must not be null")) {
    return s;
  }
  return guarded([&] {
    fill(out, zzb::zz_bound_direct(prior->impl, fidelity->impl, to_cpp(cfg)));
  });
}

ZZB_EXPORT zzb_status zzb_bound_main(const zzb_prior* prior, double h_mean,
                                     const zzb_quad_config* cfg,
                                     zzb_bound_result* out) {
  if (auto s = require(prior != nullptr && out != nullptr,
                       "prior and out must not be null")) {
    return s;
  }
  return guarded([&] {
    fill(out, zzb::main_lower_bound(prior->impl, h_mean, to_cpp(cfg)));
  });
}

ZZB_EXPORT zzb_status zzb_bound_appendix(const zzb_prior* prior,
                                         double h_mean,
                                         const zzb_quad_config* cfg,
                                         zzb_bound_result* out) {
  if (auto s = require(prior != nullptr && out != nullptr,
                       "prior and out must not be null")) {
    return s;
  }
  return guarded([&] {
    fill(out, zzb::appendix_bound(prior->impl, h_mean, to_cpp(cfg)));
  });
}

ZZB_EXPORT zzb_status zzb_bound_variance(const zzb_prior* prior, double h_std,
                                         const zzb_quad_config* cfg,
                                         zzb_bound_result* out) {
  if (auto s = require(prior != nullptr && out != nullptr,
                       "prior and out must not be null")) {
    return s;
  }
  return guarded([&] {
    fill(out, zzb::variance_bound(prior->impl, h_std, to_cpp(cfg)));
  });
}

ZZB_EXPORT zzb_status zzb_bound_uniform_closed_form(double t0, double h_mean,
                                                    const zzb_quad_config* cfg,
                                                    zzb_bound_result* out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    fill(out, zzb::uniform_closed_form(t0, h_mean, to_cpp(cfg)));
  });
}

ZZB_EXPORT zzb_status zzb_lpi_benchmark(double h_mean,
                                        const zzb_quad_config* cfg,
                                        zzb_bound_result* out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded(
      [&] { fill(out, zzb::lpi_benchmark(h_mean, to_cpp(cfg))); });
}

ZZB_EXPORT zzb_status zzb_hpi_limit_single_mode(const zzb_prior* prior,
                                                const zzb_quad_config* cfg,
                                                double* out) {
  if (auto s = require(prior != nullptr && out != nullptr,
                       "prior and out must not be null")) {
    return s;
  }
  return guarded(
      [&] { *out = zzb::hpi_limit_single_mode(prior->impl, to_cpp(cfg)); });
}

ZZB_EXPORT zzb_status zzb_constant_A(const zzb_quad_config* cfg, double* out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] { *out = zzb::constant_A(to_cpp(cfg)); });
}

ZZB_EXPORT zzb_status zzb_constant_A_prime(double* out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] { *out = zzb::constant_A_prime(); });
}

ZZB_EXPORT zzb_status zzb_constant_A_prime_quadrature(
    const zzb_quad_config* cfg, double* out) {
  if (auto s = require(out != nullptr, "out must not be null")) return s;
  return guarded(
      [&] { *out = zzb::constant_A_prime_quadrature(to_cpp(cfg)); });
}

/* --------------------------- analysis ----------------------------- */

ZZB_EXPORT zzb_status zzb_scan_t0(zzb_prior_family family,
                                  zzb_bound_kind kind, const double* t0_grid,
                                  size_t n, zzb_fix_mode fix,
                                  double fixed_value,
                                  const zzb_quad_config* cfg,
                                  zzb_scan** out) {
  if (auto s = require(out != nullptr && t0_grid != nullptr && n > 0,
                       "scan requires a nonempty grid and out")) {
    return s;
  }
  return guarded([&] {
    *out = new zzb_scan{zzb::scan_t0(
        to_family(family), to_kind(kind),
        std::vector<double>(t0_grid, t0_grid + n),
        fix == ZZB_FIX_X0 ? zzb::FixMode::kX0 : zzb::FixMode::kW, fixed_value,
        to_cpp(cfg))};
  });
}

ZZB_EXPORT void zzb_scan_destroy(zzb_scan* scan) { delete scan; }

ZZB_EXPORT zzb_status zzb_scan_row_count(const zzb_scan* scan, size_t* out) {
  if (auto s = require(scan != nullptr && out != nullptr,
                       "scan and out must not be null")) {
    return s;
  }
  *out = scan->impl.rows.size();
  return ZZB_OK;
}

ZZB_EXPORT zzb_status zzb_scan_row(const zzb_scan* scan, size_t index,
                                   double* t0, double* value, double* err,
                                   double* dx, double* gain) {
  if (auto s = require(scan != nullptr, "scan must not be null")) return s;
  if (index >= scan->impl.rows.size()) {
    return set_error(ZZB_ERR_INVALID_ARGUMENT, "scan row index out of range");
  }
  const zzb::ScanRow& r = scan->impl.rows[index];
  if (t0) *t0 = r.t0;
  if (value) *value = r.value;
  if (err) *err = r.err;
  if (dx) *dx = r.dx;
  if (gain) *gain = r.gain;
  return ZZB_OK;
}

ZZB_EXPORT zzb_status zzb_scan_asymptotes(const zzb_scan* scan,
                                          double* lpi_coeff,
                                          double* hpi_coeff) {
  if (auto s = require(scan != nullptr, "scan must not be null")) return s;
  if (lpi_coeff) *lpi_coeff = scan->impl.lpi_coeff;
  if (hpi_coeff) *hpi_coeff = scan->impl.hpi_coeff;
  return ZZB_OK;
}

ZZB_EXPORT zzb_status zzb_scan_write_csv(const zzb_scan* scan,
                                         const char* path) {
  if (auto s = require(scan != nullptr && path != nullptr,
                       "scan and path must not be null")) {
    return s;
  }
  return guarded([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw zzb::IoError(std::string("cannot open for writing: ") + path);
    zzb::write_scan_csv(scan->impl, f);
    if (!f) throw zzb::IoError(std::string("write failed: ") + path);
  });
}

ZZB_EXPORT zzb_status zzb_scan_write_json(const zzb_scan* scan,
                                          const char* path) {
  if (auto s = require(scan != nullptr && path != nullptr,
                       "scan and path must not be null")) {
    return s;
  }
  return guarded([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw zzb::IoError(std::string("cannot open for writing: ") + path);
    zzb::write_scan_json(scan->impl, f);
    if (!f) throw zzb::IoError(std::string("write failed: ") + path);
  });
}

ZZB_EXPORT zzb_status zzb_max_gain(zzb_prior_family family,
                                   zzb_bound_kind kind, double lo, double hi,
                                   const zzb_quad_config* cfg,
                                   double* gain_max, double* t0_star,
                                   int* flat_flag) {
  if (auto s = require(gain_max != nullptr && t0_star != nullptr,
                       "gain_max and t0_star must not be null")) {
    return s;
  }
  return guarded([&] {
    const zzb::MaxGainResult r =
        zzb::max_gain(to_family(family), to_kind(kind), lo, hi, to_cpp(cfg));
    *gain_max = r.gain;
    *t0_star = r.t0_star;
    if (flat_flag) *flat_flag = r.flat ? 1 : 0;
  });
}

ZZB_EXPORT zzb_status zzb_weighted_rmse(const zzb_prior* prior,
                                        zzb_estimator_kind estimator,
                                        uint64_t n_samples, uint64_t seed,
                                        double* rmse,
                                        double* standard_error) {
  if (auto s = require(prior != nullptr && rmse != nullptr,
                       "prior and rmse must not be null")) {
    return s;
  }
  return guarded([&] {
    zzb::EstimatorSpec spec;
    switch (estimator) {
      case ZZB_ESTIMATOR_CONSTANT_MEAN:
        spec = zzb::EstimatorSpec::constant_mean();
        break;
      case ZZB_ESTIMATOR_RANDOM_GUESS:
        spec = zzb::EstimatorSpec::random_guess();
        break;
      default:
        throw zzb::InvalidArgumentError("unknown estimator kind id");
    }
    const zzb::RmseResult r =
        zzb::weighted_rmse(prior->impl, spec, n_samples, seed);
    *rmse = r.rmse;
    if (standard_error) *standard_error = r.standard_error;
  });
}

ZZB_EXPORT zzb_status zzb_weighted_rmse_custom(
    const zzb_prior* prior, double (*estimator)(double x, void* ctx),
    void* ctx, uint64_t n_samples, uint64_t seed, double* rmse,
    double* standard_error) {
  if (auto s = require(prior != nullptr && estimator != nullptr &&
                           rmse != nullptr,
                       "prior, estimator and rmse must not be null")) {
    return s;
  }
  return guarded([&] {
    const zzb::RmseResult r = zzb::weighted_rmse(
        prior->impl,
        zzb::EstimatorSpec::custom_fn(
            [estimator, ctx](double x) { return estimator(x, ctx); }),
        n_samples, seed);
    *rmse = r.rmse;
    if (standard_error) *standard_error = r.standard_error;
  });
}

ZZB_EXPORT zzb_status zzb_figure_write_csv(zzb_figure_id figure,
                                           const zzb_quad_config* cfg,
                                           const char* path) {
  if (auto s = require(path != nullptr, "path must not be null")) return s;
  return guarded([&] {
    zzb::FigureId id;
    switch (figure) {
      case ZZB_FIG1:
        id = zzb::FigureId::kFig1;
        break;
      case ZZB_FIG2A:
        id = zzb::FigureId::kFig2a;
        break;
      case ZZB_FIG2B:
        id = zzb::FigureId::kFig2b;
        break;
      default:
        throw zzb::InvalidArgumentError("unknown figure id");
    }
    const zzb::DataTable table = zzb::figure_data(id, to_cpp(cfg));
    std::ofstream f(path, std::ios::binary);
    if (!f) throw zzb::IoError(std::string("cannot open for writing: ") + path);
    zzb::write_table_csv(table, f);
    if (!f) throw zzb::IoError(std::string("write failed: ") + path);
  });
}

} /* extern "C" */
