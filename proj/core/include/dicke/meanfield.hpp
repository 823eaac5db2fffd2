#pragma once

// Representative-atom (mean-field) master equation: a single three-level
// atom whose Hamiltonian carries (N-1)-scaled feedback from its own
// coherences, plus the closed-form linear-probe response.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dicke/ode.hpp"
#include "dicke/params.hpp"
#include "dicke/types.hpp"

namespace dicke {

/// 3x3 matrix over (|1>, |2>, |3>).
using RepMatrix = Eigen::Matrix3cd;

class RepState {
 public:
  explicit RepState(const RepMatrix& rho) : rho_(rho) {}
  static RepState ground();  // |1><1|
  /// |psi><psi| with psi = c1|1> + c2|2> + c3|3>; throws unless normalized within 1e-10.
  static RepState pure(cplx c1, cplx c2, cplx c3);

  const RepMatrix& rho() const noexcept { return rho_; }
  cplx operator()(int i, int j) const { return rho_(i, j); }

  double hermiticity_error() const;
  double trace_error() const;
  double min_eigenvalue() const;
  /// Throws InvalidData when hermiticity/trace exceed `tol` or an eigenvalue
  /// falls below `min_eig`.
  void check(double tol = 1e-10, double min_eig = -1e-8) const;

 private:
  RepMatrix rho_;
};

/// Gamma_eff = (Gamma31 + Gamma32)/2 + gamma3 + Gamma31 (N - 1).
double gamma_eff(const ModelParams& params);

/// Per-emitter linear susceptibility in the aligned convention (detunings
/// enter as -Delta1, -Delta2):
///   (i/2) / (Gamma_eff - i Delta1 + Omega_c^2 / (4 [gamma2/2 - i (Delta1 - Delta2)])).
/// Delta2 is taken from params. Throws SingularityError for 0/0.
cplx chi_mf(const ModelParams& params, double delta1);

/// Weak-probe coherence
///   i (Omega_p/2)(gamma2/2 + i d) / [(Gamma_eff + i Delta1)(gamma2/2 + i d) + Omega_c^2/4],
/// d = Delta1 - Delta2.
cplx rho31_linear(const ModelParams& params, double delta1);

/// Representative effective Hamiltonian for the current state.
RepMatrix rep_hamiltonian(const RepMatrix& rho, const ModelParams& params);

/// d rho/dt = -i [H_eff(<sigma>), rho] + L_D[rho].
RepMatrix rep_rhs(const RepMatrix& rho, const ModelParams& params);

using RepObserver = std::function<void(std::size_t index, double t, const RepMatrix& rho)>;

ode::Stats rep_evolve(const RepState& rho0, const ModelParams& params,
                      std::span<const double> t_grid, const RepObserver& observe,
                      const ode::Options& options = {});

/// Hermitized snapshots at each entry of t_grid.
std::vector<RepState> rep_evolve(const RepState& rho0, const ModelParams& params,
                                 std::span<const double> t_grid,
                                 const ode::Options& options = {});

struct RepSteadyOptions {
  double residual_tol = 1e-12;   // max |d rho/dt| element
  double march_tol = 1e-5;       // hand over to Newton below this residual
  double t_max = 1e7;            // give up marching beyond this time
  int newton_iterations = 50;
  bool newton_first = true;      // try Newton from |1><1| before marching
};

struct RepSteadyState {
  RepState state;
  double residual = 0.0;
  double march_time = 0.0;
  int newton_iterations = 0;
};

/// Newton on the nine real Hermitian parameters (trace constrained) from
/// |1><1|; if that fails or lands on a non-positive state, time-march until
/// the residual drops below march_tol and retry Newton from there.
/// Throws ConvergenceError carrying the final residual.
RepSteadyState rep_steady_state(const ModelParams& params, const RepSteadyOptions& options = {});

struct ChannelIntensities {
  double i31 = 0.0;
  double i32 = 0.0;
  double total() const { return i31 + i32; }
};

/// I_3a = Gamma_3a [N rho33 + N (N-1) |rho_3a|^2].
ChannelIntensities mf_intensities(const RepMatrix& rho, const ModelParams& params);

}  // namespace dicke
