#pragma once

namespace dicke {

/// How the exact solver dephases.
///   raman: one collective operator sqrt(gamma_phi) (N1 - N2).
///   level: collective sqrt(gamma2) N2 and sqrt(gamma3) Ne, the level-resolved
///          double-commutator form that the representative-atom equation uses.
enum class DephasingModel { raman, level };

/// Atom/field parameters. Rates, detunings and Rabi frequencies are
/// dimensionless, in units of a reference linewidth Gamma.
struct ModelParams {
  int n_atoms = 1;
  double omega_p = 0.0;  // probe Rabi frequency, 3<->1
  double omega_c = 0.0;  // control Rabi frequency, 3<->2
  double delta1 = 0.0;   // probe detuning
  double delta2 = 0.0;   // control detuning
  double gamma31 = 1.0;
  double gamma32 = 1.0;
  double gamma2 = 0.0;     // ground-state (|2>) dephasing
  double gamma3 = 0.0;     // excited-state pure dephasing
  double gamma_phi = 0.0;  // Raman dephasing, exact solver
  DephasingModel dephasing = DephasingModel::raman;

  /// Throws InvalidParameter when N < 1 or any rate is negative / non-finite.
  void validate() const;
};

/// The EIT comparison set: N=14, Omega_p=0.1, Omega_c=0.5, Delta2=0,
/// Gamma31=Gamma32=1, gamma2=gamma3=gamma_phi=1e-4.
ModelParams eit_reference_params();

/// Drive-off transient set. Symmetric: Gamma31=Gamma32=1. Asymmetric:
/// Gamma31=5, Gamma32=1. gamma2=gamma_phi=0.01, N=30.
ModelParams superradiance_params(bool symmetric);

}  // namespace dicke
