// zzbound CLI: constants, single bound evaluations, regime scans,
// figure-reproduction CSVs and Monte-Carlo RMSE baselines, all through the
// public C API.
//
// Exit codes: 0 success; 1 numerical or I/O failure (with the achieved
// tolerance reported); 2 argument, domain or configuration errors.
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zzbound.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

// Thrown for anything that should terminate with a specific exit code.
struct CliFailure {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail_usage(const std::string& msg) {
  throw CliFailure{kExitUsage, msg};
}

// Converts a zzb_status into the documented exit code, attaching the
// library's thread-local error description.
void check(zzb_status status, const std::string& context) {
  if (status == ZZB_OK) return;
  const std::string detail = zzb_last_error();
  const std::string msg = context + ": " + detail;
  switch (status) {
    case ZZB_ERR_INVALID_ARGUMENT:
    case ZZB_ERR_DOMAIN:
    case ZZB_ERR_UNSUPPORTED:
      throw CliFailure{kExitUsage, msg};
    default:
      // Numerical failures carry the achieved-tolerance report in the
      // message; I/O failures name the path.
      throw CliFailure{kExitNumerical, msg};
  }
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_kv(const std::string& key, double value) {
  std::cout << key << "=" << g17(value) << "\n";
}

/* --------------------------- configuration ------------------------- */

struct Settings {
  zzb_quad_config quad = zzb_quad_config_default();
  int threads = 0;           // 0 = no programmatic cap
  std::string format;        // "" = unset
  std::string out;           // "" = unset
};

// Loads and validates the strict-schema JSON config:
//   { abs_tol, rel_tol, max_subdivisions, improper_cutoff_sigmas,
//     threads, format, out }
// Unknown keys and wrong types are rejected.
Settings load_config(const std::string& path) {
  Settings s;
  if (path.empty()) return s;

  std::ifstream f(path);
  if (!f) fail_usage("cannot open config file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    fail_usage("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) fail_usage("config file must contain a JSON object");

  for (const auto& [key, value] : j.items()) {
    if (key == "abs_tol" || key == "rel_tol" ||
        key == "improper_cutoff_sigmas") {
      if (!value.is_number()) fail_usage("config key " + key + " must be a number");
      const double v = value.get<double>();
      if (key == "abs_tol") s.quad.abs_tol = v;
      else if (key == "rel_tol") s.quad.rel_tol = v;
      else s.quad.improper_cutoff_sigmas = v;
    } else if (key == "max_subdivisions" || key == "threads") {
      if (!value.is_number_integer()) {
        fail_usage("config key " + key + " must be an integer");
      }
      const int v = value.get<int>();
      if (key == "max_subdivisions") s.quad.max_subdivisions = v;
      else s.threads = v;
    } else if (key == "format" || key == "out") {
      if (!value.is_string()) fail_usage("config key " + key + " must be a string");
      const std::string v = value.get<std::string>();
      if (key == "format") {
        if (v != "csv" && v != "json") {
          fail_usage("config key format must be \"csv\" or \"json\"");
        }
        s.format = v;
      } else {
        s.out = v;
      }
    } else {
      fail_usage("unknown config key: " + key);
    }
  }
  if (s.threads < 0) fail_usage("config key threads must be >= 0");
  return s;
}

/* ------------------------- argument parsing ------------------------ */

// Parses "k1=v1,k2=v2" into a map; every value must be a finite double
// except for keys listed in `string_keys` (kept verbatim).
std::map<std::string, std::string> parse_kv_list(const std::string& text) {
  std::map<std::string, std::string> out;
  if (text.empty()) return out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail_usage("malformed key=value item: \"" + item + "\"");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (...) {
    fail_usage("value of " + key + " is not a finite number: \"" + text + "\"");
  }
}

struct PriorSpec {
  std::string family;
  std::map<std::string, std::string> params;
};

zzb_prior_family family_id(const std::string& name) {
  if (name == "uniform") return ZZB_PRIOR_UNIFORM;
  if (name == "gaussian") return ZZB_PRIOR_GAUSSIAN;
  if (name == "bimodal") return ZZB_PRIOR_BIMODAL_TWO_BLOCK;
  if (name == "triangular") return ZZB_PRIOR_TRIANGULAR;
  fail_usage("unknown prior family: " + name +
             " (expected uniform|gaussian|bimodal|triangular|table)");
}

// RAII wrapper for prior handles.
struct PriorHandle {
  zzb_prior* p = nullptr;
  ~PriorHandle() { zzb_prior_destroy(p); }
};

void make_prior(const PriorSpec& spec, PriorHandle* handle) {
  const auto& kv = spec.params;
  auto need = [&](const char* key) -> double {
    auto it = kv.find(key);
    if (it == kv.end()) {
      fail_usage(std::string("prior family ") + spec.family +
                 " requires --prior-params " + key + "=<value>");
    }
    return parse_double(key, it->second);
  };
  auto optional_or = [&](const char* key, double fallback) -> double {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_double(key, it->second);
  };
  auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : kv) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) fail_usage("unknown prior parameter: " + key);
    }
  };

  if (spec.family == "uniform") {
    reject_unknown({"center", "W"});
    check(zzb_prior_create_uniform(optional_or("center", 0.0), need("W"),
                                   &handle->p),
          "creating uniform prior");
  } else if (spec.family == "gaussian") {
    reject_unknown({"mu", "sigma"});
    check(zzb_prior_create_gaussian(optional_or("mu", 0.0), need("sigma"),
                                    &handle->p),
          "creating gaussian prior");
  } else if (spec.family == "bimodal") {
    reject_unknown({"W"});
    check(zzb_prior_create_bimodal(need("W"), &handle->p),
          "creating bimodal prior");
  } else if (spec.family == "triangular") {
    reject_unknown({"a", "b", "mode"});
    check(zzb_prior_create_triangular(need("a"), need("b"), need("mode"),
                                      &handle->p),
          "creating triangular prior");
  } else if (spec.family == "table") {
    reject_unknown({"file"});
    auto it = kv.find("file");
    if (it == kv.end()) {
      fail_usage("prior family table requires --prior-params file=<csv>");
    }
    check(zzb_prior_create_from_csv(it->second.c_str(), &handle->p),
          "loading tabulated prior");
  } else {
    fail_usage("unknown prior family: " + spec.family);
  }
}

// Parses the single "<key>=<value>" --scale argument and checks the key
// matches what the chosen bound consumes.
double parse_scale(const std::string& text, const std::string& expected_key) {
  const size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    fail_usage("--scale expects " + expected_key + "=<value>, got \"" + text +
               "\"");
  }
  const std::string key = text.substr(0, eq);
  if (key != expected_key) {
    fail_usage("--scale key must be " + expected_key + " for this bound, got " +
               key);
  }
  return parse_double("--scale " + key, text.substr(eq + 1));
}

/* --------------------------- subcommands --------------------------- */

int run_constants(const Settings& settings) {
  double a = 0.0;
  check(zzb_constant_A(&settings.quad, &a), "computing A");
  double a_prime = 0.0;
  check(zzb_constant_A_prime(&a_prime), "computing A'");
  double gain = 0.0, t0_star = 0.0;
  int flat = 0;
  check(zzb_max_gain(ZZB_PRIOR_UNIFORM, ZZB_BOUND_MAIN, 0.05, 2.0,
                     &settings.quad, &gain, &t0_star, &flat),
        "maximizing the uniform gain");

  print_kv("A_computed", a);
  std::cout << "A_paper=0.042\n";
  print_kv("A_prime", a_prime);
  print_kv("sqrt_A_half", std::sqrt(a / 2.0));
  print_kv("sqrt_A_prime_half", std::sqrt(a_prime / 2.0));
  print_kv("max_gain", gain);
  print_kv("t0_star", t0_star);
  return kExitOk;
}

int run_bound(const Settings& settings, const PriorSpec& prior_spec,
              const std::string& kind, const std::string& scale,
              const std::string& fidelity, const std::string& fidelity_file) {
  PriorHandle prior;
  make_prior(prior_spec, &prior);

  zzb_bound_result result{};
  if (kind == "main" || kind == "appendix" || kind == "closed") {
    const double h_mean = parse_scale(scale, "H");
    if (kind == "main") {
      check(zzb_bound_main(prior.p, h_mean, &settings.quad, &result),
            "evaluating the main bound");
    } else if (kind == "appendix") {
      check(zzb_bound_appendix(prior.p, h_mean, &settings.quad, &result),
            "evaluating the appendix bound");
    } else {
      // Closed form covers the uniform prior only; t0 = W / x0.
      if (prior_spec.family != "uniform") {
        fail_usage("--kind closed supports the uniform prior only");
      }
      double width = 0.0;
      check(zzb_prior_width(prior.p, &width), "querying prior width");
      const double x0 = M_PI / (2.0 * h_mean);
      check(zzb_bound_uniform_closed_form(width / x0, h_mean, &settings.quad,
                                          &result),
            "evaluating the closed-form bound");
    }
  } else if (kind == "variance") {
    const double h_std = parse_scale(scale, "dH");
    check(zzb_bound_variance(prior.p, h_std, &settings.quad, &result),
          "evaluating the variance bound");
  } else if (kind == "direct") {
    zzb_fidelity* fid = nullptr;
    if (fidelity == "qsl") {
      check(zzb_fidelity_create(ZZB_FIDELITY_QSL, parse_scale(scale, "H"),
                                &fid),
            "creating fidelity model");
    } else if (fidelity == "bhatta") {
      check(zzb_fidelity_create(ZZB_FIDELITY_BHATTA, parse_scale(scale, "dH"),
                                &fid),
            "creating fidelity model");
    } else if (fidelity == "coherent") {
      check(zzb_fidelity_create(ZZB_FIDELITY_COHERENT, parse_scale(scale, "N"),
                                &fid),
            "creating fidelity model");
    } else if (fidelity == "const") {
      check(zzb_fidelity_create(ZZB_FIDELITY_CONSTANT, parse_scale(scale, "F"),
                                &fid),
            "creating fidelity model");
    } else if (fidelity == "table") {
      if (fidelity_file.empty()) {
        fail_usage("--fidelity table requires --fidelity-file <csv>");
      }
      check(zzb_fidelity_create_from_csv(fidelity_file.c_str(), &fid),
            "loading tabulated fidelity");
    } else {
      fail_usage("unknown fidelity model: " + fidelity +
                 " (expected qsl|bhatta|coherent|const|table)");
    }
    const zzb_status status =
        zzb_bound_direct(prior.p, fid, &settings.quad, &result);
    zzb_fidelity_destroy(fid);
    check(status, "evaluating the direct bound");
  } else {
    fail_usage("unknown bound kind: " + kind +
               " (expected direct|main|appendix|variance|closed)");
  }

  std::cout << "kind=" << kind << "\n";
  print_kv("value", result.value);
  print_kv("err_estimate", result.err_estimate);
  if (std::isfinite(result.t0)) print_kv("t0", result.t0);
  if (std::isfinite(result.x0_or_delta0)) {
    print_kv("x0_or_delta0", result.x0_or_delta0);
  }
  return kExitOk;
}

zzb_bound_kind scan_kind_id(const std::string& kind) {
  if (kind == "main") return ZZB_BOUND_MAIN;
  if (kind == "appendix") return ZZB_BOUND_APPENDIX;
  if (kind == "variance") return ZZB_BOUND_VARIANCE;
  if (kind == "closed") return ZZB_BOUND_CLOSED_FORM;
  fail_usage("unknown scan kind: " + kind +
             " (expected main|appendix|variance|closed)");
}

int run_scan(const Settings& settings, const PriorSpec& prior_spec,
             const std::string& kind, double t0_min, double t0_max,
             int points, bool log_spacing, const std::string& fix,
             const std::string& out, const std::string& format) {
  if (!(t0_min > 0.0) || !(t0_max > t0_min)) {
    fail_usage("require 0 < --t0-min < --t0-max");
  }
  if (points < 1) fail_usage("--points must be >= 1");
  if (out.empty()) fail_usage("scan requires --out (or \"out\" in the config)");
  if (format != "csv" && format != "json") {
    fail_usage("--format must be csv or json");
  }

  const size_t eq = fix.find('=');
  if (eq == std::string::npos) fail_usage("--fix expects x0=<v> or W=<v>");
  const std::string fix_key = fix.substr(0, eq);
  zzb_fix_mode fix_mode;
  if (fix_key == "x0") {
    fix_mode = ZZB_FIX_X0;
  } else if (fix_key == "W") {
    fix_mode = ZZB_FIX_W;
  } else {
    fail_usage("--fix key must be x0 or W, got " + fix_key);
  }
  const double fixed_value = parse_double("--fix " + fix_key, fix.substr(eq + 1));

  std::vector<double> grid(static_cast<size_t>(points));
  if (points == 1) {
    grid[0] = t0_min;
  } else if (log_spacing) {
    const double lo = std::log10(t0_min), hi = std::log10(t0_max);
    for (int i = 0; i < points; ++i) {
      grid[static_cast<size_t>(i)] = std::pow(10.0, lo + (hi - lo) * i / (points - 1));
    }
  } else {
    for (int i = 0; i < points; ++i) {
      grid[static_cast<size_t>(i)] = t0_min + (t0_max - t0_min) * i / (points - 1);
    }
  }

  zzb_scan* scan = nullptr;
  check(zzb_scan_t0(family_id(prior_spec.family), scan_kind_id(kind),
                    grid.data(), grid.size(), fix_mode, fixed_value,
                    &settings.quad, &scan),
        "running the t0 scan");
  const zzb_status write_status = format == "csv"
                                      ? zzb_scan_write_csv(scan, out.c_str())
                                      : zzb_scan_write_json(scan, out.c_str());
  size_t n_rows = 0;
  zzb_scan_row_count(scan, &n_rows);
  zzb_scan_destroy(scan);
  check(write_status, "writing " + out);

  std::cout << "wrote " << out << " (" << n_rows << " rows, " << format
            << ")\n";
  return kExitOk;
}

int run_figure(const Settings& settings, const std::string& which,
               const std::string& out) {
  if (out.empty()) {
    fail_usage("figure requires --out (or \"out\" in the config)");
  }
  zzb_figure_id id;
  if (which == "fig1") {
    id = ZZB_FIG1;
  } else if (which == "fig2a") {
    id = ZZB_FIG2A;
  } else if (which == "fig2b") {
    id = ZZB_FIG2B;
  } else {
    fail_usage("unknown figure: " + which + " (expected fig1|fig2a|fig2b)");
  }
  check(zzb_figure_write_csv(id, &settings.quad, out.c_str()),
        "writing " + out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int run_rmse(const PriorSpec& prior_spec, const std::string& estimator,
             std::uint64_t samples, std::uint64_t seed) {
  PriorHandle prior;
  make_prior(prior_spec, &prior);

  zzb_estimator_kind kind;
  if (estimator == "mean") {
    kind = ZZB_ESTIMATOR_CONSTANT_MEAN;
  } else if (estimator == "randomguess") {
    kind = ZZB_ESTIMATOR_RANDOM_GUESS;
  } else {
    fail_usage("unknown estimator: " + estimator +
               " (expected mean|randomguess)");
  }

  double rmse = 0.0, standard_error = 0.0;
  check(zzb_weighted_rmse(prior.p, kind, samples, seed, &rmse,
                          &standard_error),
        "estimating the weighted RMSE");
  print_kv("rmse", rmse);
  print_kv("standard_error", standard_error);
  std::cout << "n_samples=" << samples << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zzbound: quantum Ziv-Zakai lower bounds on weighted RMS "
      "phase-estimation error"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file (abs_tol, rel_tol, max_subdivisions, "
                 "improper_cutoff_sigmas, threads, format, out)");

  CLI::App* cmd_constants = app.add_subcommand(
      "constants", "Print the bracket constants and the uniform max gain");

  PriorSpec prior_spec;
  std::string prior_params_text;
  std::string kind = "main";
  std::string scale;
  std::string fidelity = "qsl";
  std::string fidelity_file;
  CLI::App* cmd_bound =
      app.add_subcommand("bound", "Evaluate one lower bound");
  cmd_bound->add_option("--prior", prior_spec.family,
                        "uniform|gaussian|bimodal|triangular|table")
      ->required();
  cmd_bound->add_option("--prior-params", prior_params_text,
                        "comma-separated k=v prior parameters");
  cmd_bound->add_option("--kind", kind,
                        "direct|main|appendix|variance|closed");
  cmd_bound->add_option("--scale", scale,
                        "generator scale: H=<v> (main/appendix/closed/qsl), "
                        "dH=<v> (variance/bhatta), N=<v> (coherent), F=<v> "
                        "(const)");
  cmd_bound->add_option("--fidelity", fidelity,
                        "direct kind only: qsl|bhatta|coherent|const|table");
  cmd_bound->add_option("--fidelity-file", fidelity_file,
                        "CSV (z, F) table for --fidelity table");

  double t0_min = 1e-2, t0_max = 1e2;
  int points = 50;
  bool log_spacing = false;
  std::string fix = "x0=1";
  std::string out_path;
  std::string format;
  CLI::App* cmd_scan = app.add_subcommand(
      "scan", "Scan a bound over t0 and write a CSV/JSON table");
  cmd_scan->add_option("--prior", prior_spec.family,
                       "uniform|gaussian|bimodal|triangular")
      ->required();
  cmd_scan->add_option("--kind", kind, "main|appendix|variance|closed");
  cmd_scan->add_option("--t0-min", t0_min, "smallest t0 (> 0)");
  cmd_scan->add_option("--t0-max", t0_max, "largest t0");
  cmd_scan->add_option("--points", points, "number of grid points");
  cmd_scan->add_flag("--log", log_spacing, "log-spaced grid");
  cmd_scan->add_option("--fix", fix, "x0=<v> or W=<v> (default x0=1)");
  cmd_scan->add_option("--out", out_path, "output file path");
  cmd_scan->add_option("--format", format, "csv|json (default csv)");

  std::string figure_name;
  CLI::App* cmd_figure = app.add_subcommand(
      "figure", "Write figure-reproduction data (x0 = 1) as CSV");
  cmd_figure->add_option("figure", figure_name, "fig1|fig2a|fig2b")
      ->required();
  cmd_figure->add_option("--out", out_path, "output file path");

  std::string estimator = "mean";
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 20260814;
  CLI::App* cmd_rmse = app.add_subcommand(
      "rmse", "Monte-Carlo weighted RMSE of a baseline estimator");
  cmd_rmse->add_option("--prior", prior_spec.family,
                       "uniform|gaussian|bimodal|triangular|table")
      ->required();
  cmd_rmse->add_option("--prior-params", prior_params_text,
                       "comma-separated k=v prior parameters");
  cmd_rmse->add_option("--estimator", estimator, "mean|randomguess");
  cmd_rmse->add_option("--samples", samples, "number of Monte-Carlo samples");
  cmd_rmse->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Settings settings = load_config(config_path);
    if (settings.threads > 0) zzb_set_thread_limit(settings.threads);
    prior_spec.params = parse_kv_list(prior_params_text);

    if (app.got_subcommand(cmd_constants)) {
      return run_constants(settings);
    }
    if (app.got_subcommand(cmd_bound)) {
      if (scale.empty()) fail_usage("bound requires --scale");
      return run_bound(settings, prior_spec, kind, scale, fidelity,
                       fidelity_file);
    }
    if (app.got_subcommand(cmd_scan)) {
      const std::string effective_out =
          !out_path.empty() ? out_path : settings.out;
      std::string effective_format = !format.empty() ? format
                                     : !settings.format.empty()
                                         ? settings.format
                                         : std::string("csv");
      return run_scan(settings, prior_spec, kind, t0_min, t0_max, points,
                      log_spacing, fix, effective_out, effective_format);
    }
    if (app.got_subcommand(cmd_figure)) {
      const std::string effective_out =
          !out_path.empty() ? out_path : settings.out;
      return run_figure(settings, figure_name, effective_out);
    }
    if (app.got_subcommand(cmd_rmse)) {
      return run_rmse(prior_spec, estimator, samples, seed);
    }
    fail_usage("no subcommand given");
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
