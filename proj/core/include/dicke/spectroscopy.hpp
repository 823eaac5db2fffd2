#pragma once

// Probe-detuning scans with either solver, EIT lineshape metrics and
// exact-vs-mean-field agreement metrics.
//
// Every susceptibility stored in a SpectrumScan uses one convention in which
// Im chi > 0 is absorption:
//   exact     conj(Tr[S1 rho_ss]) / (N Omega_p)
//   ode       rho_31 of the representative atom at (-Delta1, -Delta2), over Omega_p
//   analytic  chi_mf(Delta1)

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dicke/liouvillian.hpp"
#include "dicke/meanfield.hpp"
#include "dicke/params.hpp"
#include "dicke/types.hpp"

namespace dicke {

enum class ScanMethod { exact, meanfield, analytic };
enum class MfMode { analytic, ode };

std::string to_string(ScanMethod m);

/// Solver health at one grid point (exact: steady-state diagnostics; ode:
/// representative residual; analytic: zeros).
struct PointDiagnostics {
  double residual = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};

struct ScanFailure {
  std::size_t index = 0;
  double delta1 = 0.0;
  std::string message;
};

struct SpectrumScan {
  ScanMethod method = ScanMethod::exact;
  std::vector<double> grid;
  std::vector<cplx> chi;
  ModelParams params;
  std::vector<PointDiagnostics> diagnostics;
  std::vector<ScanFailure> failures;  // only filled when keep_going is set
  bool n_scaled = false;              // chi multiplied by N

  std::vector<double> im() const;
  std::vector<double> re() const;
  /// Throws InvalidData unless grid is strictly increasing and sizes match.
  void validate() const;
};

struct ScanOptions {
  unsigned workers = 1;         // 0 = one per hardware thread
  bool keep_going = false;      // record failures (chi = NaN) instead of throwing
  bool n_scaled = false;
  SteadyStateOptions steady;    // exact solver
  RepSteadyOptions rep;         // ode mode
};

/// n points uniformly spanning [lo, hi] (both ends included).
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

SpectrumScan scan_exact(const ModelParams& params, const std::vector<double>& grid,
                        const ScanOptions& options = {});

SpectrumScan scan_mf(const ModelParams& params, const std::vector<double>& grid, MfMode mode,
                     const ScanOptions& options = {});

/// Linear interpolation of a scan onto `grid` (must lie within the scan's range).
SpectrumScan interpolate(const SpectrumScan& scan, const std::vector<double>& grid);

struct DipShape {
  std::size_t dip_index = 0;
  double dip_value = 0.0;
  double shoulder = 0.0;
  double left_crossing = 0.0;
  double right_crossing = 0.0;
  double width() const { return right_crossing - left_crossing; }
};

/// Locates the transparency dip nearest Delta1 = 0 and its half-dip crossings.
/// The shoulder is the maximum of Im chi within +-5 peak separations of 0
/// outside the dip core. Throws NoDipError.
DipShape find_dip(const SpectrumScan& scan);

/// Full width at half-dip.
double eit_width(const SpectrumScan& scan);

/// 1 - Im chi(0) / max_{|Delta1| > exclusion} Im chi. A non-positive
/// exclusion selects the default 2 x eit_width.
double eit_contrast(const SpectrumScan& scan, double exclusion_halfwidth = 0.0);

/// Im chi linearly interpolated at Delta1 = 0.
double on_resonance_absorption(const SpectrumScan& scan);

struct SlopeEstimate {
  double slope = 0.0;            // d Re chi / d Delta1 at the grid point nearest 0
  double spacing = 0.0;          // half the central-difference span
  bool resolution_warning = false;
};

SlopeEstimate line_center_slope(const SpectrumScan& scan, double max_spacing = 1e-2);

struct EitMetrics {
  std::optional<double> width;     // empty when no dip
  std::optional<double> contrast;
  double on_res_absorption = 0.0;
  SlopeEstimate slope;
};

EitMetrics eit_metrics(const SpectrumScan& scan);

struct AgreementMetrics {
  double eps2 = 0.0;       // max of the Im and Re values
  double eps_inf = 0.0;
  double eps2_im = 0.0, eps2_re = 0.0;
  double eps_inf_im = 0.0, eps_inf_re = 0.0;
  double eps0_im = 0.0;     // |Im chi_b(0) - Im chi_a(0)|
  double eps0_slope = 0.0;  // |slope_b - slope_a|
  std::optional<double> eps_width;     // |w_b - w_a| / w_a, empty unless both dip
  std::optional<double> eps_contrast;  // |C_b - C_a|
};

/// Errors of b against the reference a (normalized by a). Grids must be identical.
AgreementMetrics agreement(const SpectrumScan& a, const SpectrumScan& b);

void write_scan_csv(std::ostream& out, const SpectrumScan& scan, bool timestamp = false);

nlohmann::json to_json(const EitMetrics& m);
nlohmann::json to_json(const AgreementMetrics& m);
nlohmann::json to_json(const ModelParams& p);

}  // namespace dicke
