#pragma once

// Exact collective master equation on the symmetric subspace: Hamiltonian,
// collapse operators, column-stacked Liouvillian, steady state and transients.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dicke/ode.hpp"
#include "dicke/params.hpp"
#include "dicke/symspace.hpp"
#include "dicke/types.hpp"

namespace dicke {

/// Complex Hermitian D x D density matrix. Construction only checks shape;
/// call check() to enforce the trace/positivity tolerances.
class DensityMatrix {
 public:
  explicit DensityMatrix(DenseMatrix m);
  static DensityMatrix pure(const StateVector& psi);
  /// Inverse of vectorized() (column stacking).
  static DensityMatrix from_vector(const ComplexVector& vec, Eigen::Index dim);

  const DenseMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  ComplexVector vectorized() const;
  cplx trace() const { return m_.trace(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
  DensityMatrix hermitized() const;

  /// Throws InvalidData if any of the three invariants is violated.
  void check(double trace_tol = 1e-12, double hermiticity_tol = 1e-10,
             double min_eigenvalue = -1e-10) const;

 private:
  DenseMatrix m_;
};

/// D^2 x D^2 superoperator acting on column-stacked vec(rho), where the
/// element rho_ij sits at index j*D + i.
struct LiouvillianOp {
  SparseOperator matrix;
  Eigen::Index dim = 0;  // D

  Eigen::Index super_dim() const noexcept { return dim * dim; }
  ComplexVector apply(const ComplexVector& vec_rho) const { return matrix * vec_rho; }
};

/// H = Delta1 Ne + (Delta1 - Delta2) N2 + (Omega_p/2) S1x + (Omega_c/2) S2x.
SparseOperator build_hamiltonian(const ModelParams& params, const SymmetricBasis& basis);

/// Raman model: (C1, C2, Cphi) = (sqrt(G31) S1, sqrt(G32) S2, sqrt(gamma_phi)(N1 - N2)).
/// Level model: (C1, C2, sqrt(gamma2) N2, sqrt(gamma3) Ne).
/// Zero-rate operators are kept as zero matrices.
std::vector<SparseOperator> collapse_operators(const ModelParams& params,
                                               const SymmetricBasis& basis);

LiouvillianOp assemble_liouvillian(const SparseOperator& hamiltonian,
                                   const std::vector<SparseOperator>& collapse);

/// Convenience: basis + params -> Liouvillian.
LiouvillianOp build_liouvillian(const ModelParams& params, const SymmetricBasis& basis);

struct SteadyStateOptions {
  double residual_tol = 1e-10;
  double trace_tol = 1e-12;
  double min_eigenvalue = -1e-10;
  double hermiticity_tol = 1e-10;
  /// Condition estimate of the trace-augmented system above which the
  /// null space is treated as degenerate.
  double ambiguity_condition = 1e12;
  int refinement_steps = 3;
};

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;        // ||L vec(rho)||_inf after normalization
  double trace_error = 0.0;     // |Tr rho - 1|
  double min_eigenvalue = 0.0;
  double condition_estimate = 0.0;
  bool used_fallback = false;   // Krylov path taken
};

/// Solves L vec(rho) = 0 with one row replaced by the trace constraint.
/// Throws AmbiguityError for a degenerate null space and SolverFailure when
/// the residual cannot be brought below tolerance.
SteadyState steady_state(const LiouvillianOp& L, const SteadyStateOptions& options = {});

struct EvolveReport {
  ode::Stats stats;
  double max_trace_drift = 0.0;
};

/// Receives each requested time with the (unhermitized) column-stacked state.
using TrajectoryObserver =
    std::function<void(std::size_t index, double t, const ComplexVector& vec_rho)>;

EvolveReport evolve(const LiouvillianOp& L, const DensityMatrix& rho0,
                    std::span<const double> t_grid, const TrajectoryObserver& observe,
                    const ode::Options& options = {});

/// Hermitized snapshots at every entry of t_grid. Memory grows as
/// t_grid.size() * D^2; prefer the observer overload for large N.
std::vector<DensityMatrix> evolve(const LiouvillianOp& L, const DensityMatrix& rho0,
                                  std::span<const double> t_grid,
                                  const ode::Options& options = {});

/// Tr[op rho].
cplx expectation(const SparseOperator& op, const DensityMatrix& rho);
/// Tr[op rho] with rho given column-stacked.
cplx expectation(const SparseOperator& op, const ComplexVector& vec_rho);

}  // namespace dicke
