#pragma once

// Acceptance criteria AC1-AC10 as executable checks. Shared by the
// `dicke validate` command and the acceptance test binary.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dicke::validation {

struct Check {
  std::string name;
  double value = 0.0;
  std::optional<double> reference;
  std::optional<double> tolerance;
  std::string rule;  // human-readable pass condition
  bool passed = false;

  static Check below(std::string name, double value, double bound);
  static Check at_least(std::string name, double value, double bound);
  static Check in_range(std::string name, double value, double lo, double hi);
  static Check near_abs(std::string name, double value, double reference, double tol);
  static Check near_rel(std::string name, double value, double reference, double tol);
  static Check holds(std::string name, bool ok, std::string rule);
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;
  bool skipped = false;
  std::string error;  // set when the run itself threw

  bool passed() const;
  /// "AC3 PASS  title: name=value (rule), ..."
  std::string summary_line() const;
};

struct SuiteOptions {
  bool quick = false;     // only N <= 8 work; criteria needing larger N are skipped
  unsigned workers = 1;
  std::function<void(const std::string&)> log;  // progress messages, may be empty
  std::function<void(const Criterion&)> on_result;  // after each criterion, may be empty
};

inline constexpr int kCriteriaCount = 10;

std::string criterion_title(int id);

/// Runs one criterion; exceptions are captured into Criterion::error.
Criterion run_criterion(int id, const SuiteOptions& options);

struct ValidationReport {
  bool quick = false;
  std::vector<Criterion> criteria;
  /// All executed criteria pass (skipped ones do not count).
  bool passed() const;
};

ValidationReport run_suite(const SuiteOptions& options, const std::vector<int>& ids = {});

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const Criterion& c);
nlohmann::json to_json(const ValidationReport& r);

// ---------------------------------------------------------------------------
// Pieces exposed for tests.

struct WidthLawFit {
  double offset = 0.0;         // const in gamma2 + Omega_c^2 / (Gamma31 N + const)
  double max_rel_residual = 0.0;
  std::vector<double> predicted;
};

/// Fits the constant of Delta_EIT(N) = gamma2 + Omega_c^2 / (Gamma31 N + c)
/// by minimizing the summed squared relative residuals.
WidthLawFit fit_width_law(const std::vector<int>& ns, const std::vector<double>& widths,
                          double gamma2, double omega_c, double gamma31);

/// (max - min) / mean of |values|.
double relative_spread(const std::vector<double>& values);

}  // namespace dicke::validation
