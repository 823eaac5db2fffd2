#pragma once

// Closed-form dispersion: group index, group velocity, the large-N
// asymptote and the sodium-D2 operating point.

#include <optional>
#include <vector>

#include "dicke/params.hpp"

namespace dicke {

namespace constants {
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m (CODATA 2018)
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double c = 299792458.0;              // m/s
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

/// Macroscopic medium. ModelParams rates are multiples of `rate_unit`
/// (angular frequency, rad/s); e.g. Gamma/2pi = 5 MHz gives 2pi * 5e6.
struct MediumParams {
  double n_at = 0.0;       // atoms per m^3
  double mu31 = 0.0;       // dipole moment, C m
  double omega_p = 0.0;    // probe angular frequency, rad/s
  std::optional<double> length;  // medium length, m
  double rate_unit = 1.0;  // rad/s per model rate unit

  /// Throws InvalidParameter unless n_at, mu31 >= 0 and omega_p, rate_unit > 0.
  void validate() const;
};

struct GroupVelocityResult {
  double delta = 0.0;
  double n_g = 1.0;
  double vg_over_c = 1.0;
  double vg = constants::c;
};

/// C = n_at |mu31|^2 / (epsilon0 hbar), in s^-1.
double coupling_constant(const MediumParams& medium);

/// A0 = (gamma2/2) Gamma_eff + Omega_c^2/4 (model units squared).
double A0(const ModelParams& params);

/// d Re(N rho31)/d Delta1 at Delta1 = Delta2 = 0:
/// (N Omega_p / 2) [(gamma2/2)^2 - (Omega_c/2)^2] / A0^2 (model units).
double line_center_slope_analytic(const ModelParams& params);

/// delta(N) = (omega_p C / (4 u^2)) [(gamma2/2)^2 - (Omega_c/2)^2] / A0^2 with u = rate_unit.
double delta_N(const ModelParams& params, const MediumParams& medium);

/// n_g = 1 + delta, v_g = c / (1 + delta). Throws SuperluminalRegime when 1 + delta <= 0.
GroupVelocityResult group_result(const ModelParams& params, const MediumParams& medium);

struct VgRow {
  int n = 1;
  double delta = 0.0;
  double vg_over_c = 1.0;  // NaN when superluminal
  double ratio = 1.0;      // v_g(N) / v_g(1), NaN when either side is superluminal
  bool superluminal = false;
};

/// Rows in the order of n_list, which must contain 1.
std::vector<VgRow> vg_ratio_scan(const ModelParams& base, const MediumParams& medium,
                                 const std::vector<int>& n_list);

/// K = omega_p C / (4 Gamma31^2) |1 - Omega_c^2/gamma2^2|, Gamma31 in rad/s.
double asymptotic_K(const ModelParams& params, const MediumParams& medium);

/// Large-N form 1 - sgn(1 - Omega_c^2/gamma2^2) K / N^2 (the sign follows delta(N)).
double asymptotic_vg_over_c(const ModelParams& params, const MediumParams& medium);

/// tau_d = L / v_g. Throws MissingLength when the medium has no length.
double pulse_delay(const GroupVelocityResult& result, const MediumParams& medium);

struct ConsistencyCheck {
  bool satisfied = false;   // Gamma_eff <= Omega_c^2 / (4 gamma2)
  double gamma_eff = 0.0;   // model units
  double bound = 0.0;       // Omega_c^2 / (4 gamma2)
  double bound_2g2 = 0.0;   // Omega_c^2 / (2 gamma2), reported alongside
};

ConsistencyCheck eit_consistency_check(const ModelParams& params);

// ---------------------------------------------------------------------------
// Sodium D2 operating point

/// Gamma31 = Gamma32 = Gamma (Gamma/2pi = 5 MHz), gamma2/2pi = 0.5 kHz,
/// gamma3 = 0, Omega_c/2pi = 1.5 MHz, expressed in units of Gamma.
ModelParams sodium_params(int n_atoms = 1);
/// lambda_p = 589 nm, n_at = 1e20 m^-3, mu31 = 3.0e-29 C m, rate_unit = 2pi * 5 MHz.
MediumParams sodium_medium();

/// Sodium line and rates in the normal-dispersion slow-light regime:
/// n_at = 1e22 m^-3 and Omega_c = gamma2/2, so delta(N) >> 1 up to N ~ 1e4.
ModelParams strong_slow_light_params(int n_atoms = 1);
MediumParams strong_slow_light_medium();

struct SodiumReport {
  int n_atoms = 300;
  double gamma_eff_hz = 0.0;    // Gamma_eff / 2pi
  double bound_hz = 0.0;        // Omega_c^2 / (4 gamma2) / 2pi
  double bound_2g2_hz = 0.0;    // Omega_c^2 / (2 gamma2) / 2pi
  bool consistent = false;      // verdict under the 4 gamma2 condition
  double vg1 = 17.0;            // single-emitter anchor, m/s
  double vg = 0.0;              // N^2 * vg1
  double vg_over_c = 0.0;
};

SodiumReport sodium_demo(int n_atoms = 300, double vg1 = 17.0);

}  // namespace dicke
