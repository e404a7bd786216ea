#include "zzbound/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "parallel.hpp"
#include "zzbound/errors.hpp"

namespace zzb {
namespace {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Bound evaluation used by scans and the gain search: fixes either the
// length scale (x0 for the speed-limit kinds, delta0 for the variance kind)
// or the prior width W, and reconstructs the other from t0.
struct ScanPoint {
  BoundResult bound;
  double dx = 0.0;
};

ScanPoint evaluate_scan_point(PriorFamily family, BoundKind kind, double t0,
                              FixMode fix, double fixed_value,
                              const QuadratureConfig& quad) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) {
    throw InvalidArgumentError("scan t0 values must be positive and finite");
  }
  if (!(fixed_value > 0.0) || !std::isfinite(fixed_value)) {
    throw InvalidArgumentError("fixed scale must be positive and finite");
  }
  const double scale_len =
      fix == FixMode::kX0 ? fixed_value : fixed_value / t0;  // x0 or delta0
  const double width = fix == FixMode::kX0 ? t0 * fixed_value : fixed_value;
  const double generator = std::numbers::pi / (2.0 * scale_len);

  const Prior prior = make_scan_prior(family, width);
  ScanPoint out;
  out.dx = prior.stddev();
  switch (kind) {
    case BoundKind::kMainQsl:
      out.bound = main_lower_bound(prior, generator, quad);
      break;
    case BoundKind::kAppendixQsl:
      out.bound = appendix_bound(prior, generator, quad);
      break;
    case BoundKind::kVarianceBhatta:
      out.bound = variance_bound(prior, generator, quad);
      break;
    case BoundKind::kUniformClosedForm:
      if (family != PriorFamily::kUniform) {
        throw InvalidArgumentError(
            "the closed-form kind applies to the uniform prior only");
      }
      out.bound = uniform_closed_form(t0, generator, quad);
      break;
    default:
      throw InvalidArgumentError(
          "scans support the main, appendix, variance and closed kinds");
  }
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string prior_family_name(PriorFamily family) {
  switch (family) {
    case PriorFamily::kUniform:
      return "uniform";
    case PriorFamily::kGaussian:
      return "gaussian";
    case PriorFamily::kBimodalTwoBlock:
      return "bimodal";
    case PriorFamily::kTriangularAsymmetric:
      return "triangular";
    case PriorFamily::kTabulated:
      return "tabulated";
  }
  return "unknown";
}

Prior make_scan_prior(PriorFamily family, double width) {
  switch (family) {
    case PriorFamily::kUniform:
      return Prior::uniform(0.0, width);
    case PriorFamily::kGaussian:
      return Prior::gaussian(0.0, width);
    case PriorFamily::kBimodalTwoBlock:
      return Prior::bimodal_two_block(width);
    case PriorFamily::kTriangularAsymmetric: {
      // Symmetric triangle with standard deviation = width.
      const double half = width * std::sqrt(6.0);
      return Prior::triangular(-half, half, 0.0);
    }
    case PriorFamily::kTabulated:
      throw InvalidArgumentError(
          "tabulated priors have no one-parameter width family; construct "
          "them explicitly");
  }
  throw Error(ErrorCode::kInternal, "unreachable prior family");
}

ScanResult scan_t0(PriorFamily family, BoundKind kind,
                   const std::vector<double>& t0_grid, FixMode fix,
                   double fixed_value, const QuadratureConfig& quad) {
  if (t0_grid.empty()) {
    throw InvalidArgumentError("scan grid must be nonempty");
  }
  std::vector<double> grid = t0_grid;
  std::sort(grid.begin(), grid.end());

  ScanResult scan;
  scan.rows.resize(grid.size());
  internal::parallel_for(grid.size(), [&](std::size_t i) {
    const ScanPoint pt =
        evaluate_scan_point(family, kind, grid[i], fix, fixed_value, quad);
    ScanRow& row = scan.rows[i];
    row.t0 = grid[i];
    row.value = pt.bound.value;
    row.err = pt.bound.err_estimate;
    row.dx = pt.dx;
    row.gain = pt.bound.value > 0.0
                   ? pt.dx / pt.bound.value
                   : std::numeric_limits<double>::infinity();
  });

  const bool variance_kind = kind == BoundKind::kVarianceBhatta;
  const double A = variance_kind ? constant_A_prime_quadrature(quad)
                                 : constant_A(quad);
  scan.lpi_coeff = std::sqrt(A / 2.0);
  scan.hpi_coeff = hpi_coefficient(make_scan_prior(family, 1.0), quad);
  scan.prior_family = prior_family_name(family);
  scan.bound_kind = bound_kind_name(kind);
  scan.fixed_mode = fix == FixMode::kX0 ? "x0" : "W";
  scan.fixed_value = fixed_value;
  scan.config_hash = config_hash(
      quad, scan.prior_family + "|" + scan.bound_kind + "|" +
                scan.fixed_mode + "=" + format_g17(fixed_value));
  return scan;
}

void write_scan_csv(const ScanResult& scan, std::ostream& out) {
  out << "t0,value,err,dx,gain\n";
  for (const ScanRow& r : scan.rows) {
    out << format_g17(r.t0) << ',' << format_g17(r.value) << ','
        << format_g17(r.err) << ',' << format_g17(r.dx) << ','
        << format_g17(r.gain) << '\n';
  }
}

void write_scan_json(const ScanResult& scan, std::ostream& out) {
  nlohmann::ordered_json meta;
  meta["prior"] = scan.prior_family;
  meta["kind"] = scan.bound_kind;
  meta["fixed"] = {{"mode", scan.fixed_mode}, {"value", scan.fixed_value}};
  meta["asymptotes"] = {{"lpi_coeff", scan.lpi_coeff},
                        {"hpi_coeff", scan.hpi_coeff}};
  meta["config_hash"] = scan.config_hash;

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ScanRow& r : scan.rows) {
    rows.push_back({{"t0", r.t0},
                    {"value", r.value},
                    {"err", r.err},
                    {"dx", r.dx},
                    {"gain", r.gain}});
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = std::move(meta);
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

MaxGainResult max_gain(PriorFamily family, BoundKind kind, double lo,
                       double hi, const QuadratureConfig& quad) {
  lo = std::max(lo, 1e-6);
  hi = std::min(hi, 10.0);
  if (!(lo < hi)) {
    throw InvalidArgumentError("max_gain search interval must lie in (0, 10]");
  }
  const bool variance_kind = kind == BoundKind::kVarianceBhatta;
  const double A = variance_kind ? constant_A_prime_quadrature(quad)
                                 : constant_A(quad);
  const double lpi_value = std::sqrt(A / 2.0);  // at unit length scale

  const auto objective = [&](double t0) {
    const ScanPoint pt =
        evaluate_scan_point(family, kind, t0, FixMode::kX0, 1.0, quad);
    if (!(pt.bound.value > 0.0)) return 0.0;
    return std::min(pt.dx, lpi_value) / pt.bound.value;
  };
  const GoldenMaxResult res = golden_section_max(objective, lo, hi, 1e-6);
  MaxGainResult out;
  out.gain = res.value;
  out.t0_star = res.x;
  out.flat = res.flat;
  return out;
}

EstimatorSpec EstimatorSpec::constant_mean() {
  EstimatorSpec s;
  s.kind = EstimatorKind::kConstantMean;
  return s;
}

EstimatorSpec EstimatorSpec::random_guess() {
  EstimatorSpec s;
  s.kind = EstimatorKind::kRandomGuessFromPrior;
  return s;
}

EstimatorSpec EstimatorSpec::custom_fn(std::function<double(double)> fn) {
  EstimatorSpec s;
  s.kind = EstimatorKind::kCustom;
  s.custom = std::move(fn);
  return s;
}

RmseResult weighted_rmse(const Prior& prior, const EstimatorSpec& estimator,
                         std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1000) {
    throw InvalidArgumentError("weighted_rmse requires n_samples >= 1000");
  }
  if (estimator.kind == EstimatorKind::kCustom && !estimator.custom) {
    throw InvalidArgumentError("custom estimator requires a callable");
  }
  constexpr std::uint64_t kChunk = 65536;
  const std::uint64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  const double mean = prior.mean();

  struct ChunkAcc {
    double sum_sq = 0.0;
    double sum_quad = 0.0;
  };
  std::vector<ChunkAcc> acc(n_chunks);

  internal::parallel_for(n_chunks, [&](std::size_t c) {
    RngState rng(substream_seed(seed, c));
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(n_samples, begin + kChunk);
    ChunkAcc a;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double x = prior.sample(rng);
      double estimate;
      switch (estimator.kind) {
        case EstimatorKind::kConstantMean:
          estimate = mean;
          break;
        case EstimatorKind::kRandomGuessFromPrior:
          estimate = prior.sample(rng);
          break;
        case EstimatorKind::kCustom:
          estimate = estimator.custom(x);
          break;
        default:
          throw Error(ErrorCode::kInternal, "unreachable estimator kind");
      }
      const double e2 = (estimate - x) * (estimate - x);
      a.sum_sq += e2;
      a.sum_quad += e2 * e2;
    }
    acc[c] = a;
  });

  // Deterministic combination in fixed chunk order.
  double sum_sq = 0.0;
  double sum_quad = 0.0;
  for (const ChunkAcc& a : acc) {
    sum_sq += a.sum_sq;
    sum_quad += a.sum_quad;
  }
  const double n = static_cast<double>(n_samples);
  const double mean_sq = sum_sq / n;
  RmseResult out;
  out.n_samples = n_samples;
  out.rmse = std::sqrt(std::max(0.0, mean_sq));
  const double var_sq =
      std::max(0.0, (sum_quad / n - mean_sq * mean_sq) * n / (n - 1.0));
  const double se_mean_sq = std::sqrt(var_sq / n);
  out.standard_error = out.rmse > 0.0 ? se_mean_sq / (2.0 * out.rmse) : 0.0;
  return out;
}

DataTable figure_data(FigureId figure, const QuadratureConfig& quad) {
  constexpr int kPoints = 200;
  const double h_mean = std::numbers::pi / 2.0;  // x0 = 1
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    grid[i] = std::pow(10.0, -2.0 + 4.0 * i / (kPoints - 1.0));
  }
  const double lpi = std::sqrt(constant_A(quad) / 2.0);

  DataTable table;
  switch (figure) {
    case FigureId::kFig1: {
      table.columns = {"t0", "bound", "prior_stddev", "lpi_benchmark",
                       "max_gain_marker"};
      table.rows.resize(grid.size());
      internal::parallel_for(grid.size(), [&](std::size_t i) {
        const Prior prior = make_scan_prior(PriorFamily::kUniform, grid[i]);
        const BoundResult b = main_lower_bound(prior, h_mean, quad);
        table.rows[i] = {grid[i], b.value, prior.stddev(), lpi,
                         std::nullopt};
      });
      // Annotation row: the maximum certifiable gain and its location; the
      // bound and prior-stddev cells give the endpoints of the vertical
      // segment in the figure.
      const MaxGainResult mg =
          max_gain(PriorFamily::kUniform, BoundKind::kMainQsl, 0.05, 2.0,
                   quad);
      const Prior star_prior =
          make_scan_prior(PriorFamily::kUniform, mg.t0_star);
      const BoundResult star = main_lower_bound(star_prior, h_mean, quad);
      std::vector<std::optional<double>> marker = {
          mg.t0_star, star.value, star_prior.stddev(), lpi, mg.gain};
      const auto pos = std::lower_bound(
          table.rows.begin(), table.rows.end(), mg.t0_star,
          [](const auto& row, double t) { return *row[0] < t; });
      table.rows.insert(pos, std::move(marker));
      break;
    }
    case FigureId::kFig2a: {
      table.columns = {"t0", "bound", "appendix_bound", "prior_stddev",
                       "lpi_benchmark"};
      table.rows.resize(grid.size());
      internal::parallel_for(grid.size(), [&](std::size_t i) {
        const Prior prior = make_scan_prior(PriorFamily::kGaussian, grid[i]);
        const BoundResult b = main_lower_bound(prior, h_mean, quad);
        const BoundResult ap = appendix_bound(prior, h_mean, quad);
        table.rows[i] = {grid[i], b.value, ap.value, prior.stddev(), lpi};
      });
      break;
    }
    case FigureId::kFig2b: {
      table.columns = {"t0", "bound", "prior_stddev", "hpi_asymptote",
                       "lpi_benchmark"};
      const double hpi_coeff = hpi_coefficient(
          make_scan_prior(PriorFamily::kBimodalTwoBlock, 1.0), quad);
      table.rows.resize(grid.size());
      internal::parallel_for(grid.size(), [&](std::size_t i) {
        const Prior prior =
            make_scan_prior(PriorFamily::kBimodalTwoBlock, grid[i]);
        const BoundResult b = main_lower_bound(prior, h_mean, quad);
        table.rows[i] = {grid[i], b.value, prior.stddev(),
                         hpi_coeff * grid[i], lpi};
      });
      break;
    }
  }
  return table;
}

void write_table_csv(const DataTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (row[c]) out << format_g17(*row[c]);
    }
    out << '\n';
  }
}

std::string config_hash(const QuadratureConfig& quad, const std::string& tag) {
  std::string bytes = "abs=" + format_g17(quad.abs_tol) +
                      ";rel=" + format_g17(quad.rel_tol) +
                      ";max=" + std::to_string(quad.max_subdivisions) +
                      ";cut=" + format_g17(quad.improper_cutoff_sigmas) +
                      ";tag=" + tag;
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

}  // namespace zzb
