#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include <dicke/spectroscopy.hpp>

#include "acceptance.hpp"
#include "commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dicke;

namespace {

struct Result {
  int code = -1;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "dicke");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

cli::ParseResult parse(std::vector<std::string> args) {
  args.insert(args.begin(), "dicke");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::parse(static_cast<int>(argv.size()), argv.data(), out, err);
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "dicke_cli_test" / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST(Parse, ExitCodesForBadInvocations) {
  EXPECT_EQ(run({}).code, cli::kConfigError);
  EXPECT_EQ(run({"no-such-command"}).code, cli::kConfigError);
  EXPECT_EQ(run({"eit-scan", "--bogus", "1"}).code, cli::kConfigError);
  EXPECT_EQ(run({"eit-scan", "--n", "0"}).code, cli::kConfigError);
  EXPECT_EQ(run({"eit-scan", "--mf-mode", "fast"}).code, cli::kConfigError);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  EXPECT_EQ(run({"eit-scan", "--config", "/nonexistent/dicke.ini"}).code, cli::kConfigError);
}

TEST(Parse, ConfigFileThenFlags) {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  const fs::path ini = dir / "run.ini";
  std::ofstream(ini) << "workers = 3\n"
                        "[eit-scan]\n"
                        "n = 5\n"
                        "omega-c = 0.8\n"
                        "mf-mode = analytic\n";
  auto p = parse({"--config", ini.string(), "eit-scan"});
  ASSERT_TRUE(p.config.has_value());
  EXPECT_EQ(p.config->workers, 3u);
  EXPECT_EQ(p.config->params.n_atoms, 5);
  EXPECT_EQ(p.config->params.omega_c, 0.8);
  EXPECT_EQ(p.config->mf_mode, "analytic");
  EXPECT_EQ(p.config->params.omega_p, 0.1);

  p = parse({"--config", ini.string(), "eit-scan", "--n", "7"});
  ASSERT_TRUE(p.config.has_value());
  EXPECT_EQ(p.config->params.n_atoms, 7);
  EXPECT_EQ(p.config->params.omega_c, 0.8);
}

TEST(Parse, DefaultsPerCommand) {
  auto p = parse({"sr-burst"});
  ASSERT_TRUE(p.config.has_value());
  EXPECT_EQ(p.config->params.n_atoms, 30);
  EXPECT_EQ(p.config->params.gamma31, 5.0);
  EXPECT_EQ(p.config->params.gamma2, 0.01);
  p = parse({"sr-scaling", "--symmetric"});
  EXPECT_EQ(p.config->params.gamma31, 1.0);
  EXPECT_EQ(p.config->n_list.front(), 4);
  EXPECT_EQ(p.config->n_list.back(), 30);
  p = parse({"eit-scan"});
  EXPECT_EQ(p.config->params.n_atoms, 14);
  EXPECT_EQ(p.config->exact_points, 201u);
  p = parse({"vg-scan", "--medium", "sodium", "--length", "0.01"});
  ASSERT_TRUE(p.config->medium.has_value());
  EXPECT_EQ(p.config->medium->n_at, 1e20);
  EXPECT_EQ(*p.config->medium->length, 0.01);
}

TEST(Parse, OutputRootFromEnvironment) {
  ::setenv(cli::kOutputRootEnv, "/tmp/dicke-root", 1);
  auto p = parse({"vg-scan"});
  EXPECT_EQ(p.config->out_dir, fs::path("/tmp/dicke-root") / "vg-scan");
  p = parse({"--out", "/tmp/elsewhere", "vg-scan"});
  EXPECT_EQ(p.config->out_dir, fs::path("/tmp/elsewhere"));
  ::unsetenv(cli::kOutputRootEnv);
  p = parse({"vg-scan"});
  EXPECT_EQ(p.config->out_dir, fs::path(".") / "vg-scan");
}

TEST(EitScan, SingleAtomReduction) {
  const fs::path dir = scratch("eit1");
  const auto r = run({"--out", dir.string(), "--no-timestamp", "eit-scan", "--n", "1", "--dephasing", "level",
                      "--mf-points", "41"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json m = load(dir / "metrics.json");
  EXPECT_LT(m["agreement"]["eps2"].get<double>(), 1e-6);
  EXPECT_TRUE(m["failures"].empty());
  EXPECT_EQ(slurp(dir / "exact.csv").substr(0, 21), "delta1,re_chi,im_chi\n");
}

TEST(EitScan, NoAbsorptionAtResonanceWithoutDephasing) {
  const fs::path dir = scratch("eit_g0");
  const auto r = run({"--out", dir.string(), "--no-timestamp", "eit-scan", "--n", "2", "--gamma2", "0",
                      "--mf-mode", "analytic", "--exact-points", "5"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::ifstream f(dir / "mf.csv");
  std::string line;
  bool seen = false;
  while (std::getline(f, line))
    if (line.rfind("0,", 0) == 0) {
      EXPECT_EQ(line.substr(line.rfind(',') + 1), "0");
      seen = true;
    }
  EXPECT_TRUE(seen);
}

TEST(EitScan, SolverFailureExitCode) {
  const fs::path dir = scratch("eit_fail");
  const auto r = run({"--out", dir.string(), "eit-scan", "--n", "1", "--omega-c", "0", "--gamma32", "0",
                      "--exact-points", "5", "--mf-mode", "analytic"});
  EXPECT_EQ(r.code, cli::kSolverFailure);
  const json m = load(dir / "metrics.json");
  EXPECT_EQ(m["failures"].size(), 5u);
}

TEST(SrBurst, SingleAtomReportsFitFailure) {
  const fs::path dir = scratch("burst1");
  const auto r = run({"--out", dir.string(), "sr-burst", "--n", "1", "--t-points", "201"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = load(dir / "sech_fit.json");
  EXPECT_EQ(j["exact"]["fit"]["status"], "fit-failure");
  EXPECT_TRUE(j["exact"]["peak_Itot"]["boundary"].get<bool>());
  EXPECT_TRUE(fs::exists(dir / "exact_trace.csv"));
  EXPECT_TRUE(fs::exists(dir / "mf_trace.csv"));
  EXPECT_EQ(run({"sr-burst", "--channel", "33"}).code, cli::kConfigError);
}

TEST(SrScaling, PlantedMode) {
  const fs::path dir = scratch("planted");
  const auto r = run({"--out", dir.string(), "sr-scaling", "--planted", "A=0.5", "--i0", "2",
                      "--n-list", "2", "5", "10", "20", "40", "60"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = load(dir / "scaling.json");
  EXPECT_NEAR(j["fit"]["exponent_b"].get<double>(), 2.0, 1e-8);
  EXPECT_NEAR(j["apparent_exponent"]["A"].get<double>(), 0.5, 1e-8);
  ASSERT_EQ(j["apparent_exponent"]["xi_per_N"].size(), 6u);
  for (const auto& row : j["apparent_exponent"]["xi_per_N"]) {
    const double n = row["N"].get<double>();
    EXPECT_NEAR(row["xi"].get<double>(), 2.0 + std::log(0.5) / std::log(n), 1e-8);
    EXPECT_NEAR(row["xi_minus_2_times_lnN"].get<double>(), std::log(0.5), 1e-8);
  }
  EXPECT_EQ(run({"sr-scaling", "--planted", "B=1"}).code, cli::kConfigError);
  EXPECT_EQ(run({"sr-scaling", "--planted", "A=-1"}).code, cli::kConfigError);
  EXPECT_EQ(run({"sr-scaling", "--n-list", "4", "5", "6"}).code, cli::kConfigError);
  EXPECT_EQ(run({"sr-scaling", "--n-list", "1", "4", "5", "6"}).code, cli::kConfigError);
}

TEST(SrScaling, SmallSimulatedSweep) {
  const fs::path dir = scratch("sweep");
  const auto r = run({"--out", dir.string(), "--no-timestamp", "sr-scaling", "--symmetric", "--n-list", "4", "6",
                      "8", "10", "--t-points", "401"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = load(dir / "scaling.json");
  EXPECT_GT(j["exact"]["fit"]["exponent_b"].get<double>(), 1.0);
  EXPECT_GT(j["meanfield"]["fit"]["exponent_b"].get<double>(), 1.0);
  EXPECT_TRUE(j["exact"]["failures"].empty());
}

TEST(VgScan, RatioAndReproducibleCsv) {
  const fs::path dir = scratch("vg");
  auto r = run({"--out", dir.string(), "--no-timestamp", "vg-scan"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const std::string first = slurp(dir / "vg.csv");
  r = run({"--out", dir.string(), "--no-timestamp", "vg-scan"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(slurp(dir / "vg.csv"), first);
  EXPECT_EQ(first.substr(0, 24), "N,delta,vg_over_c,ratio\n");
  EXPECT_EQ(first.substr(24, 2), "1,");
  EXPECT_EQ(first.substr(first.find('\n', 24) - 2, 2), ",1");

  const json j = load(dir / "vg_report.json");
  EXPECT_NEAR(j["top_decade_loglog_slope"].get<double>(), 2.0, 0.05);
  EXPECT_TRUE(j["superluminal_N"].empty());

  r = run({"--out", dir.string(), "vg-scan"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(slurp(dir / "vg.csv").rfind("# generated ", 0), 0u);
}

TEST(VgScan, DispersionSignFlipsAcrossControlEqualsDephasing) {
  const fs::path below = scratch("vg_below"), above = scratch("vg_above");
  const double g2 = strong_slow_light_params().gamma2;
  ASSERT_EQ(run({"--out", below.string(), "vg-scan", "--n-max", "100", "--points", "3"}).code, cli::kOk);
  ASSERT_EQ(run({"--out", above.string(), "vg-scan", "--n-max", "100", "--points", "3", "--omega-c",
                 std::to_string(4 * g2)}).code,
            cli::kOk);
  auto second_delta = [](const fs::path& p) {
    std::ifstream f(p / "vg.csv");
    std::string line;
    std::getline(f, line);
    std::getline(f, line);
    std::getline(f, line);
    line = line.substr(line.find(',') + 1);
    return std::stod(line.substr(0, line.find(',')));
  };
  EXPECT_GT(second_delta(below), 0.0);
  EXPECT_LT(second_delta(above), 0.0);
}

TEST(SodiumDemo, Report) {
  const auto r = run({"sodium-demo"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("N = 300"), std::string::npos);
  EXPECT_NE(r.out.find("1.5 GHz"), std::string::npos);
  EXPECT_NE(r.out.find("2.25 GHz"), std::string::npos);
  EXPECT_NE(r.out.find("Omega_c^2/(4 gamma2): no"), std::string::npos);
}

TEST(Validate, QuickSubsetWritesReport) {
  const fs::path dir = scratch("validate");
  const auto r = run({"--out", dir.string(), "validate", "--quick", "--only", "8", "10", "2"});
  ASSERT_EQ(r.code, cli::kOk) << r.out << r.err;
  EXPECT_NE(r.out.find("AC8 PASS"), std::string::npos);
  EXPECT_NE(r.out.find("AC10 PASS"), std::string::npos);
  EXPECT_NE(r.out.find("AC2 SKIP"), std::string::npos);
  const json j = load(dir / "report.json");
  EXPECT_EQ(j["overall"], "pass");
}

TEST(Validate, OverallIsConjunctionOfChecks) {
  validation::ValidationReport r;
  validation::Criterion ok;
  ok.checks.push_back(validation::Check::below("x", 1.0, 2.0));
  validation::Criterion bad = ok;
  bad.checks.push_back(validation::Check::below("y", 3.0, 2.0));
  r.criteria = {ok};
  EXPECT_TRUE(r.passed());
  r.criteria.push_back(bad);
  EXPECT_FALSE(r.passed());
  validation::Criterion errored;
  errored.error = "boom";
  EXPECT_FALSE(errored.passed());
}

TEST(Validate, WidthLawDetectsWrongEffectiveWidth) {
  // Exact widths at small N follow the law with the true Gamma31; assuming a
  // doubled collective rate must break the fit.
  ModelParams p = eit_reference_params();
  const std::vector<int> ns{2, 4, 6, 8};
  std::vector<double> widths;
  for (int n : ns) {
    p.n_atoms = n;
    const double half = 5 * p.omega_c * p.omega_c / (p.gamma31 * n);
    widths.push_back(eit_width(scan_exact(p, uniform_grid(-half, half, 201))));
  }
  const auto good = validation::fit_width_law(ns, widths, p.gamma2, p.omega_c, p.gamma31);
  const auto tampered = validation::fit_width_law(ns, widths, p.gamma2, p.omega_c, 2 * p.gamma31);
  EXPECT_LT(good.max_rel_residual, 0.2);
  EXPECT_GT(tampered.max_rel_residual, 0.2);
}
