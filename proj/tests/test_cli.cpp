// End-to-end checks of the command-line tool: output contracts, file
// serialization determinism, the exit-code policy, and config handling.
// Drives the installed binary through std::system; links no project code.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr combined
};

int g_run_counter = 0;

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

RunResult run(const std::string& args) {
  const std::string capture =
      "/tmp/zzb_cli_capture_" + std::to_string(g_run_counter++) + ".txt";
  const std::string cmd =
      std::string(ZZBOUND_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(capture);
  std::remove(capture.c_str());
  return r;
}

// Value of a "key=value" line in the tool's output.
double get_value(const std::string& out, const std::string& key) {
  std::istringstream is(out);
  std::string line;
  const std::string prefix = key + "=";
  while (std::getline(is, line)) {
    if (line.rfind(prefix, 0) == 0) return std::stod(line.substr(prefix.size()));
  }
  FAIL("missing key in output: " << key << "\n" << out);
  return 0.0;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("constants subcommand") {
  const RunResult r = run("constants");
  REQUIRE(r.code == 0);
  CHECK(get_value(r.out, "A_computed") ==
        doctest::Approx(0.03936018548).epsilon(1e-8));
  CHECK(contains(r.out, "A_paper=0.042"));
  CHECK(get_value(r.out, "A_prime") ==
        doctest::Approx(0.0947152654306489).epsilon(1e-12));
  CHECK(get_value(r.out, "sqrt_A_half") ==
        doctest::Approx(0.140285753879868).epsilon(1e-9));
  CHECK(get_value(r.out, "sqrt_A_prime_half") ==
        doctest::Approx(0.217618089127086).epsilon(1e-9));
  CHECK(get_value(r.out, "max_gain") == doctest::Approx(1.742424).epsilon(1e-4));
  CHECK(get_value(r.out, "t0_star") == doctest::Approx(0.485964).epsilon(1e-3));
  CHECK(contains(r.out, "max_gain=1.742"));
}

TEST_CASE("bound subcommand") {
  SUBCASE("main bound, uniform prior (the worked example)") {
    const RunResult r = run(
        "bound --prior uniform --prior-params W=0.5 --kind main "
        "--scale H=1.5707963267948966");
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "kind=main"));
    CHECK(get_value(r.out, "value") ==
          doctest::Approx(0.081906865468).epsilon(1e-6));
    CHECK(get_value(r.out, "t0") == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(get_value(r.out, "x0_or_delta0") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(get_value(r.out, "err_estimate") < 1e-6);
  }
  SUBCASE("closed form agrees with the generic route") {
    const RunResult closed = run(
        "bound --prior uniform --prior-params W=0.5 --kind closed "
        "--scale H=1.5707963267948966");
    REQUIRE(closed.code == 0);
    CHECK(get_value(closed.out, "value") ==
          doctest::Approx(0.081906865468).epsilon(1e-6));
  }
  SUBCASE("variance bound takes dH") {
    const RunResult r = run(
        "bound --prior gaussian --prior-params mu=0,sigma=0.5 "
        "--kind variance --scale dH=1.5707963267948966");
    REQUIRE(r.code == 0);
    CHECK(get_value(r.out, "value") > 0.0);
    // delta0 = pi / (2 dH) = 1.
    CHECK(get_value(r.out, "x0_or_delta0") == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("direct bound with a perfect-overlap channel") {
    const RunResult r = run(
        "bound --prior uniform --prior-params W=3.141592653589793 "
        "--kind direct --fidelity const --scale F=1");
    REQUIRE(r.code == 0);
    // Equals the prior standard deviation pi/sqrt(12).
    CHECK(get_value(r.out, "value") ==
          doctest::Approx(0.906899682117).epsilon(1e-6));
  }
  SUBCASE("tabulated prior from CSV") {
    const std::string csv = "/tmp/zzb_cli_prior.csv";
    write_file(csv, "x,density\n0,0\n0.8,2\n1,0\n");
    const RunResult r = run("bound --prior table --prior-params file=" + csv +
                            " --kind main --scale H=1.0");
    REQUIRE(r.code == 0);
    CHECK(get_value(r.out, "value") > 0.0);
    std::remove(csv.c_str());
  }
}

TEST_CASE("scan subcommand") {
  const std::string out_csv = "/tmp/zzb_cli_scan.csv";
  const std::string args =
      "scan --prior uniform --kind main --t0-min 0.1 --t0-max 10 "
      "--points 7 --log --out " + out_csv;
  SUBCASE("csv schema, monotone grid, determinism") {
    const RunResult r = run(args);
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "wrote " + out_csv));
    CHECK(contains(r.out, "(7 rows, csv)"));
    const std::string first = slurp(out_csv);
    const std::vector<std::string> lines = lines_of(first);
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] == "t0,value,err,dx,gain");
    double prev_t0 = 0.0;
    for (size_t i = 1; i < lines.size(); ++i) {
      double t0 = 0, value = 0, err = 0, dx = 0, gain = 0;
      char c = 0;
      std::istringstream row(lines[i]);
      row >> t0 >> c >> value >> c >> err >> c >> dx >> c >> gain;
      CHECK(t0 > prev_t0);
      prev_t0 = t0;
      CHECK(std::isfinite(value));
      CHECK(value > 0.0);
      CHECK(gain == doctest::Approx(dx / value).epsilon(1e-12));
    }
    // Rerun: byte-identical file.
    const RunResult again = run(args);
    REQUIRE(again.code == 0);
    CHECK(slurp(out_csv) == first);
    std::remove(out_csv.c_str());
  }
  SUBCASE("json format parses and carries the metadata") {
    const std::string out_json = "/tmp/zzb_cli_scan.json";
    const RunResult r = run(
        "scan --prior gaussian --kind main --t0-min 0.5 --t0-max 2 "
        "--points 3 --format json --out " + out_json);
    REQUIRE(r.code == 0);
    const std::string text = slurp(out_json);
    const nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j["metadata"]["prior"] == "gaussian");
    CHECK(j["metadata"]["kind"] == "main");
    CHECK(j["metadata"]["fixed"]["mode"] == "x0");
    CHECK(j["rows"].size() == 3);
    CHECK_FALSE(contains(text, "timestamp"));
    std::remove(out_json.c_str());
  }
}

TEST_CASE("figure subcommand") {
  const std::string out = "/tmp/zzb_cli_fig1.csv";
  const RunResult r = run("figure fig1 --out " + out);
  REQUIRE(r.code == 0);
  const std::string first = slurp(out);
  const std::vector<std::string> lines = lines_of(first);
  REQUIRE(lines.size() == 202);  // header + 200 grid rows + 1 marker row
  CHECK(lines[0] == "t0,bound,prior_stddev,lpi_benchmark,max_gain_marker");
  // Grid rows leave the annotation column empty (line ends with the comma);
  // exactly one row fills it, near t0 = 0.486.
  int marker_rows = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    REQUIRE_FALSE(lines[i].empty());
    if (lines[i].back() != ',') {
      ++marker_rows;
      const double t0 = std::stod(lines[i]);
      CHECK(t0 > 0.4);
      CHECK(t0 < 0.6);
    }
  }
  CHECK(marker_rows == 1);
  const RunResult again = run("figure fig1 --out " + out);
  REQUIRE(again.code == 0);
  CHECK(slurp(out) == first);
  std::remove(out.c_str());
}

TEST_CASE("rmse subcommand") {
  const RunResult r = run(
      "rmse --prior uniform --prior-params W=1 --samples 100000 --seed 7");
  REQUIRE(r.code == 0);
  const double rmse = get_value(r.out, "rmse");
  const double se = get_value(r.out, "standard_error");
  CHECK(std::abs(rmse - 0.28867513459481287) <= 3.0 * se);
  CHECK(se > 0.0);
  CHECK(contains(r.out, "n_samples=100000"));
  // Same seed, same result text.
  const RunResult again = run(
      "rmse --prior uniform --prior-params W=1 --samples 100000 --seed 7");
  CHECK(again.out == r.out);
}

TEST_CASE("exit-code policy") {
  SUBCASE("usage errors exit 2") {
    CHECK(run("constants --no-such-flag").code == 2);
    CHECK(run("").code == 2);                      // missing subcommand
    CHECK(run("frobnicate").code == 2);            // unknown subcommand
    CHECK(run("bound --prior uniform --prior-params W=1").code == 2);
    // missing --scale
    CHECK(run("bound --prior nosuch --prior-params W=1 --scale H=1").code ==
          2);
    CHECK(run("bound --prior uniform --prior-params W=-1 --scale H=1").code ==
          2);  // invalid width
    CHECK(run("bound --prior uniform --prior-params W=1 --scale H=0").code ==
          2);  // invalid generator scale
    CHECK(run("bound --prior uniform --prior-params W=1,bogus=3 "
              "--scale H=1").code == 2);  // unknown prior parameter
    CHECK(run("bound --prior uniform --prior-params W=1 --kind variance "
              "--scale H=1").code == 2);  // variance wants dH=
    CHECK(run("scan --prior uniform --t0-min -1 --t0-max 2 --out /tmp/x.csv")
              .code == 2);
    CHECK(run("scan --prior uniform --points 0 --out /tmp/x.csv").code == 2);
    CHECK(run("scan --prior uniform").code == 2);  // missing --out
    CHECK(run("figure fig9 --out /tmp/x.csv").code == 2);
    CHECK(run("rmse --prior uniform --prior-params W=1 --estimator nope")
              .code == 2);
  }
  SUBCASE("help exits 0") {
    CHECK(run("--help").code == 0);
    CHECK(run("bound --help").code == 0);
  }
  SUBCASE("runtime failures exit 1") {
    // Unwritable output path.
    CHECK(run("scan --prior uniform --out /nonexistent/dir/scan.csv").code ==
          1);
    CHECK(run("figure fig1 --out /nonexistent/dir/fig.csv").code == 1);
    // Missing tabulated-prior file is an IO failure.
    CHECK(run("bound --prior table --prior-params file=/nonexistent/p.csv "
              "--kind main --scale H=1").code == 1);
  }
  SUBCASE("quadrature exhaustion exits 1 and reports what was achieved") {
    const std::string cfg = "/tmp/zzb_cli_starved.json";
    write_file(cfg,
               "{\"abs_tol\": 1e-30, \"rel_tol\": 1e-30, "
               "\"max_subdivisions\": 1}");
    const RunResult r = run("--config " + cfg +
                            " bound --prior gaussian "
                            "--prior-params mu=0,sigma=1 --kind main "
                            "--scale H=1");
    CHECK(r.code == 1);
    CHECK(contains(r.out, "achieved error"));
    CHECK(contains(r.out, "best value"));
    std::remove(cfg.c_str());
  }
}

TEST_CASE("config file") {
  SUBCASE("unknown keys are rejected") {
    const std::string cfg = "/tmp/zzb_cli_badkey.json";
    write_file(cfg, "{\"abs_tol\": 1e-10, \"wibble\": 3}");
    CHECK(run("--config " + cfg + " constants").code == 2);
    std::remove(cfg.c_str());
  }
  SUBCASE("type errors are rejected") {
    const std::string cfg = "/tmp/zzb_cli_badtype.json";
    write_file(cfg, "{\"max_subdivisions\": \"many\"}");
    CHECK(run("--config " + cfg + " constants").code == 2);
    std::remove(cfg.c_str());
  }
  SUBCASE("malformed json is rejected") {
    const std::string cfg = "/tmp/zzb_cli_badjson.json";
    write_file(cfg, "{\"abs_tol\": ");
    CHECK(run("--config " + cfg + " constants").code == 2);
    std::remove(cfg.c_str());
  }
  SUBCASE("missing config file is rejected") {
    CHECK(run("--config /nonexistent/cfg.json constants").code == 2);
  }
  SUBCASE("format and out can come from the config") {
    const std::string cfg = "/tmp/zzb_cli_fmt.json";
    const std::string out = "/tmp/zzb_cli_cfg_scan.json";
    write_file(cfg, "{\"format\": \"json\", \"out\": \"" + out +
                        "\", \"threads\": 2}");
    const RunResult r = run("--config " + cfg +
                            " scan --prior uniform --t0-min 0.5 "
                            "--t0-max 1 --points 2");
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "(2 rows, json)"));
    CHECK(nlohmann::json::parse(slurp(out)).contains("rows"));
    std::remove(cfg.c_str());
    std::remove(out.c_str());
  }
  SUBCASE("quadrature settings apply") {
    // A generous abs_tol produces a larger reported err than the default.
    const std::string cfg = "/tmp/zzb_cli_loose.json";
    write_file(cfg, "{\"abs_tol\": 1e-4, \"rel_tol\": 1e-3}");
    const RunResult loose = run("--config " + cfg +
                                " bound --prior uniform --prior-params W=0.5 "
                                "--kind main --scale H=1.5707963267948966");
    const RunResult tight = run(
        "bound --prior uniform --prior-params W=0.5 --kind main "
        "--scale H=1.5707963267948966");
    REQUIRE(loose.code == 0);
    REQUIRE(tight.code == 0);
    CHECK(get_value(loose.out, "err_estimate") >=
          get_value(tight.out, "err_estimate"));
    // Both still agree to the loose tolerance.
    CHECK(get_value(loose.out, "value") ==
          doctest::Approx(get_value(tight.out, "value")).epsilon(1e-3));
    std::remove(cfg.c_str());
  }
}
