#pragma once

// Drive-off superradiant transients with both solvers, burst peaks,
// sech^2 envelope fits and peak-intensity scaling analysis.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dicke/fitting.hpp"
#include "dicke/ode.hpp"
#include "dicke/params.hpp"

namespace dicke {

enum class TraceMethod { exact, meanfield };
enum class Channel { i31, i32, tot };

std::string to_string(TraceMethod m);
std::string to_string(Channel c);
/// "31", "32" or "tot" (also accepts "I31", "I32", "Itot").
Channel parse_channel(const std::string& s);

struct BurstTrace {
  TraceMethod method = TraceMethod::exact;
  int n_atoms = 1;
  std::vector<double> t;
  std::vector<double> i31, i32, itot;
  double max_trace_drift = 0.0;

  const std::vector<double>& channel(Channel c) const;
  /// Throws InvalidData on size mismatch, itot != i31 + i32 (1e-10) or intensity < -1e-9.
  void validate() const;
};

/// n points uniformly on [0, t_end].
std::vector<double> sr_time_grid(double t_end = 0.5, std::size_t points = 2001);

/// Exact symmetric-subspace transient from the product state
/// (eps, eps, sqrt(1 - 2 eps^2))^N. I_3a = Gamma_3a Tr[S_a^dag S_a rho].
/// Throws InvalidConfiguration when a drive is nonzero and InvalidParameter
/// unless 0 <= eps < 1/sqrt(2).
BurstTrace sr_transient_exact(const ModelParams& params, double epsilon,
                              std::span<const double> t_grid, const ode::Options& options = {});

/// Representative-atom transient mapped through mf_intensities.
BurstTrace sr_transient_mf(const ModelParams& params, double epsilon,
                           std::span<const double> t_grid, const ode::Options& options = {});

struct Peak {
  double imax = 0.0;
  double t_peak = 0.0;
  std::size_t index = 0;
  bool boundary = false;  // maximum on the first or last sample; not refined
};

/// Grid maximum refined by the parabola through it and its two neighbours.
Peak peak_extract(const BurstTrace& trace, Channel channel);
Peak peak_extract(std::span<const double> t, std::span<const double> y);

/// Full width at half maximum around the peak by linear interpolation.
/// Throws InvalidData when either half-maximum crossing is missing.
double half_max_width(std::span<const double> t, std::span<const double> y, const Peak& peak);

/// sech^2 fit on samples within t_peak +- window_halfwidth * tau_guess, with
/// tau_guess = FWHM / (2 acosh(sqrt 2)). Throws FitFailure for a boundary peak
/// or too few samples.
SechFit sech2_fit(const BurstTrace& trace, Channel channel, double window_halfwidth = 2.0,
                  const LmOptions& options = {});
SechFit sech2_fit(std::span<const double> t, std::span<const double> y,
                  double window_halfwidth = 2.0, const LmOptions& options = {});

using PeakPoint = std::pair<int, double>;  // (N, I_peak)

struct ScalingFit {
  double exponent_b = 0.0;
  double log_prefactor = 0.0;
  double r_squared = 1.0;
  std::vector<PeakPoint> points;
};

/// OLS of ln I_peak against ln N. Needs >= 4 distinct N; throws InvalidData
/// for a non-positive peak.
ScalingFit power_law_fit(const std::vector<PeakPoint>& peaks);

struct ApparentExponent {
  std::vector<std::pair<int, double>> xi_per_n;          // (N, xi(N))
  std::vector<std::pair<int, double>> correction_per_n;  // (N, (xi - 2) ln N)
  double A = 0.0;   // geometric mean of I_peak / (I0 N^2)
  double I0 = 0.0;
};

/// xi(N) = ln(I_peak / I0) / ln N. Throws InvalidData when N = 1 appears and
/// InvalidParameter unless I0 > 0.
ApparentExponent apparent_exponent(const std::vector<PeakPoint>& peaks, double I0);

struct SweepPoint {
  int n_atoms = 0;
  Peak peak;
  Peak peak31, peak32;
  std::string error;  // nonempty when the job failed (keep_going)
  bool ok() const { return error.empty(); }
};

struct SweepOptions {
  TraceMethod method = TraceMethod::exact;
  Channel channel = Channel::tot;
  unsigned workers = 1;
  bool keep_going = false;  // record per-N failures instead of throwing
  ode::Options ode;
};

/// One transient per N (independent jobs), results in the order of n_list.
std::vector<SweepPoint> sr_sweep(const ModelParams& base, double epsilon,
                                 const std::vector<int>& n_list, std::span<const double> t_grid,
                                 const SweepOptions& options = {});

/// Default I0: peak of the N = 1 exact trace for the same rates and epsilon.
double single_emitter_peak(const ModelParams& base, double epsilon, std::span<const double> t_grid,
                           Channel channel = Channel::tot);

void write_trace_csv(std::ostream& out, const BurstTrace& trace, bool timestamp = false);

nlohmann::json to_json(const SechFit& f);
nlohmann::json to_json(const Peak& p);
nlohmann::json to_json(const ScalingFit& f);
nlohmann::json to_json(const ApparentExponent& a);

}  // namespace dicke
