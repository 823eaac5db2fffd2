#pragma once

// `dicke` command-line front end: configuration (INI file + flags) and the
// six subcommands. Exit codes: 0 ok, 1 validation failure, 2 configuration
// error, 3 solver failure.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <dicke/params.hpp>
#include <dicke/slowlight.hpp>

namespace dicke::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kConfigError = 2, kSolverFailure = 3 };

/// Environment variable naming the default output root (default ".").
inline constexpr const char* kOutputRootEnv = "DICKE_OUTPUT_ROOT";

struct ModelOverrides {
  std::optional<int> n;
  std::optional<double> omega_p, omega_c, delta1, delta2;
  std::optional<double> gamma31, gamma32, gamma2, gamma3, gamma_phi;
  std::optional<std::string> dephasing;  // raman | level

  void apply(ModelParams& p) const;
};

struct RunConfig {
  std::string command;
  ModelParams params;
  std::optional<MediumParams> medium;
  std::filesystem::path out_dir;
  unsigned workers = 0;  // 0 = one per hardware thread, capped by the job count
  bool timestamp = true;

  // eit-scan
  std::vector<double> exact_range{-6.0, 6.0};
  std::size_t exact_points = 201;
  std::vector<double> mf_range{-200.0, 200.0};
  std::size_t mf_points = 201;
  std::string mf_mode = "ode";
  bool n_scaled = false;

  // sr-burst / sr-scaling
  bool symmetric = false;
  double epsilon = 0.1;
  double t_end = 0.5;
  std::size_t t_points = 2001;
  std::string channel = "tot";
  double fit_window = 2.0;
  std::vector<int> n_list;
  std::string method = "both";  // exact | meanfield | both
  std::optional<std::string> planted;
  std::optional<double> i0;

  // vg-scan
  int n_max = 10000;
  int vg_points = 41;

  // validate
  bool quick = false;
  std::vector<int> only;

  // sodium-demo
  double vg1 = 17.0;
};

/// Parses argv (argv[0] is the program name) into a RunConfig. Returns an
/// exit code instead when parsing ends the run (help, errors).
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kOk;
};

ParseResult parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs a parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + execute with the error-to-exit-code mapping.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dicke::cli
