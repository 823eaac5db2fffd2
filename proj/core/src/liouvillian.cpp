#include "dicke/liouvillian.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#ifdef DICKE_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include "dicke/errors.hpp"

namespace dicke {

void ModelParams::validate() const {
  if (n_atoms < 1) throw InvalidParameter("atom count must be >= 1, got " + std::to_string(n_atoms));
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(omega_p) || !finite(omega_c) || !finite(delta1) || !finite(delta2))
    throw InvalidParameter("drive and detuning values must be finite");
  const struct {
    const char* name;
    double value;
  } rates[] = {{"gamma31", gamma31}, {"gamma32", gamma32}, {"gamma2", gamma2},
               {"gamma3", gamma3},   {"gamma_phi", gamma_phi}};
  for (const auto& r : rates)
    if (!finite(r.value) || r.value < 0.0)
      throw InvalidParameter(std::string(r.name) + " must be a finite non-negative rate");
}

ModelParams eit_reference_params() {
  ModelParams p;
  p.n_atoms = 14;
  p.omega_p = 0.1;
  p.omega_c = 0.5;
  p.delta2 = 0.0;
  p.gamma31 = 1.0;
  p.gamma32 = 1.0;
  p.gamma2 = 1e-4;
  p.gamma3 = 1e-4;
  p.gamma_phi = 1e-4;
  return p;
}

ModelParams superradiance_params(bool symmetric) {
  ModelParams p;
  p.n_atoms = 30;
  p.gamma31 = symmetric ? 1.0 : 5.0;
  p.gamma32 = 1.0;
  p.gamma2 = 0.01;
  p.gamma_phi = 0.01;
  return p;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(DenseMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw InvalidParameter("density matrix must be square and non-empty");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::from_vector(const ComplexVector& vec, Eigen::Index dim) {
  if (dim <= 0 || vec.size() != dim * dim)
    throw InvalidParameter("vectorized state has length " + std::to_string(vec.size()) +
                           ", expected " + std::to_string(dim * dim));
  return DensityMatrix(Eigen::Map<const DenseMatrix>(vec.data(), dim, dim));
}

ComplexVector DensityMatrix::vectorized() const {
  return Eigen::Map<const ComplexVector>(m_.data(), m_.size());
}

double DensityMatrix::hermiticity_error() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const DenseMatrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::hermitized() const {
  return DensityMatrix(0.5 * (m_ + m_.adjoint()));
}

void DensityMatrix::check(double trace_tol, double hermiticity_tol, double min_eig) const {
  const double herm = hermiticity_error();
  if (herm > hermiticity_tol)
    throw InvalidData("density matrix not Hermitian: max deviation " + std::to_string(herm));
  const double tr = std::abs(trace() - 1.0);
  if (tr >= trace_tol) throw InvalidData("density matrix trace off by " + std::to_string(tr));
  const double lmin = min_eigenvalue();
  if (lmin < min_eig)
    throw InvalidData("density matrix has negative eigenvalue " + std::to_string(lmin));
}

// ---------------------------------------------------------------------------
// Operators

SparseOperator build_hamiltonian(const ModelParams& params, const SymmetricBasis& basis) {
  params.validate();
  if (params.n_atoms != basis.atom_count())
    throw InvalidParameter("params.n_atoms does not match basis");
  const auto num = number_operators(basis);
  SparseOperator h = cplx(params.delta1) * num.ne + cplx(params.delta1 - params.delta2) * num.n2;
  if (params.omega_p != 0.0)
    h += cplx(params.omega_p / 2) * quadrature(lowering_operator(basis, Branch::one));
  if (params.omega_c != 0.0)
    h += cplx(params.omega_c / 2) * quadrature(lowering_operator(basis, Branch::two));
  h.makeCompressed();
  return h;
}

std::vector<SparseOperator> collapse_operators(const ModelParams& params,
                                               const SymmetricBasis& basis) {
  params.validate();
  if (params.n_atoms != basis.atom_count())
    throw InvalidParameter("params.n_atoms does not match basis");
  const auto num = number_operators(basis);
  std::vector<SparseOperator> ops;
  ops.push_back(cplx(std::sqrt(params.gamma31)) * lowering_operator(basis, Branch::one));
  ops.push_back(cplx(std::sqrt(params.gamma32)) * lowering_operator(basis, Branch::two));
  if (params.dephasing == DephasingModel::raman) {
    ops.push_back(cplx(std::sqrt(params.gamma_phi)) * SparseOperator(num.n1 - num.n2));
  } else {
    ops.push_back(cplx(std::sqrt(params.gamma2)) * num.n2);
    ops.push_back(cplx(std::sqrt(params.gamma3)) * num.ne);
  }
  for (auto& op : ops) op.makeCompressed();
  return ops;
}

namespace {

using Triplet = Eigen::Triplet<cplx>;

// Appends scale * kron(X, Y) where X, Y are D x D.
void kron_into(const SparseOperator& x, const SparseOperator& y, cplx scale, Eigen::Index d,
               std::vector<Triplet>& out) {
  for (Eigen::Index xc = 0; xc < x.outerSize(); ++xc)
    for (SparseOperator::InnerIterator xi(x, xc); xi; ++xi)
      for (Eigen::Index yc = 0; yc < y.outerSize(); ++yc)
        for (SparseOperator::InnerIterator yi(y, yc); yi; ++yi)
          out.emplace_back(xi.row() * d + yi.row(), xi.col() * d + yi.col(),
                           scale * xi.value() * yi.value());
}

// kron(I, Y) without materializing I.
void left_identity_into(const SparseOperator& y, cplx scale, Eigen::Index d,
                        std::vector<Triplet>& out) {
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index yc = 0; yc < y.outerSize(); ++yc)
      for (SparseOperator::InnerIterator yi(y, yc); yi; ++yi)
        out.emplace_back(p * d + yi.row(), p * d + yi.col(), scale * yi.value());
}

// kron(X, I).
void right_identity_into(const SparseOperator& x, cplx scale, Eigen::Index d,
                         std::vector<Triplet>& out) {
  for (Eigen::Index xc = 0; xc < x.outerSize(); ++xc)
    for (SparseOperator::InnerIterator xi(x, xc); xi; ++xi)
      for (Eigen::Index q = 0; q < d; ++q)
        out.emplace_back(xi.row() * d + q, xi.col() * d + q, scale * xi.value());
}

bool is_zero(const SparseOperator& op) {
  for (Eigen::Index k = 0; k < op.nonZeros(); ++k)
    if (op.valuePtr()[k] != cplx(0.0)) return false;
  return true;
}

}  // namespace

LiouvillianOp assemble_liouvillian(const SparseOperator& hamiltonian,
                                   const std::vector<SparseOperator>& collapse) {
  const Eigen::Index d = hamiltonian.rows();
  if (hamiltonian.cols() != d) throw InvalidParameter("Hamiltonian must be square");
  for (const auto& c : collapse)
    if (c.rows() != d || c.cols() != d)
      throw InvalidParameter("collapse operator dimension does not match the Hamiltonian");

  const cplx i_unit(0.0, 1.0);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(d * d * 4));

  // Explicit diagonal keeps the sparsity pattern independent of parameter values.
  for (Eigen::Index k = 0; k < d * d; ++k) trip.emplace_back(k, k, cplx(0.0));

  const SparseOperator h_t = hamiltonian.transpose();
  left_identity_into(hamiltonian, -i_unit, d, trip);
  right_identity_into(h_t, i_unit, d, trip);

  for (const auto& c : collapse) {
    if (is_zero(c)) continue;
    const SparseOperator c_conj = c.conjugate();
    const SparseOperator cdc = SparseOperator(c.adjoint()) * c;
    const SparseOperator cdc_t = cdc.transpose();
    kron_into(c_conj, c, cplx(1.0), d, trip);
    left_identity_into(cdc, cplx(-0.5), d, trip);
    right_identity_into(cdc_t, cplx(-0.5), d, trip);
  }

  LiouvillianOp op;
  op.dim = d;
  op.matrix.resize(d * d, d * d);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.matrix.makeCompressed();
  return op;
}

LiouvillianOp build_liouvillian(const ModelParams& params, const SymmetricBasis& basis) {
  return assemble_liouvillian(build_hamiltonian(params, basis), collapse_operators(params, basis));
}

// ---------------------------------------------------------------------------
// Steady state

namespace {

using RealSparse = Eigen::SparseMatrix<double>;

// Hermitian states are parametrized by D^2 reals: slot j*D+i holds Re rho_ij
// for i <= j and Im rho_ji for i > j. Because L preserves hermiticity, the
// upper triangle of L[rho] determines the rest, and the stationary problem
// becomes a real square system. Row 0 (the Re part of the (0,0) equation)
// is replaced by the trace functional.
RealSparse hermitian_system(const LiouvillianOp& L) {
  const Eigen::Index d = L.dim;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(4 * L.matrix.nonZeros() + d));

  const auto emit = [&](Eigen::Index row, Eigen::Index col, cplx value) {
    const Eigen::Index ra = row % d, rb = row / d;
    if (ra > rb) return;
    if (row != 0 && value.real() != 0.0) trip.emplace_back(row, col, value.real());
    if (ra < rb && value.imag() != 0.0) trip.emplace_back(ra * d + rb, col, value.imag());
  };

  for (Eigen::Index s = 0; s < L.matrix.outerSize(); ++s) {
    const Eigen::Index a = s % d, b = s / d;
    for (SparseOperator::InnerIterator it(L.matrix, s); it; ++it) {
      const cplx v = it.value();
      if (a == b) {
        emit(it.row(), s, v);
      } else if (a < b) {
        emit(it.row(), b * d + a, v);
        emit(it.row(), a * d + b, cplx(0.0, 1.0) * v);
      } else {
        emit(it.row(), a * d + b, v);
        emit(it.row(), b * d + a, cplx(0.0, -1.0) * v);
      }
    }
  }
  for (Eigen::Index k = 0; k < d; ++k) trip.emplace_back(0, k * d + k, 1.0);
  // Keep the diagonal structurally present so the pattern does not depend on values.
  for (Eigen::Index k = 1; k < d * d; ++k) trip.emplace_back(k, k, 0.0);

  RealSparse a(d * d, d * d);
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();
  return a;
}

ComplexVector expand_hermitian(const Eigen::VectorXd& x, Eigen::Index d) {
  ComplexVector v(d * d);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a = 0; a < d; ++a) {
      if (a == b)
        v[b * d + a] = x[b * d + a];
      else if (a < b)
        v[b * d + a] = cplx(x[b * d + a], x[a * d + b]);
      else
        v[b * d + a] = cplx(x[a * d + b], -x[b * d + a]);
    }
  return v;
}

double norm1(const RealSparse& a) {
  double best = 0.0;
  for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
    double s = 0.0;
    for (RealSparse::InnerIterator it(a, c); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

// Deterministic probe vector with no special structure.
Eigen::VectorXd probe(Eigen::Index n, double seed) {
  Eigen::VectorXd z(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) + seed;
    z[k] = std::sin(1.618033988749895 * x * x + seed) + 0.5 * std::cos(2.718281828459045 * x);
  }
  return z;
}

#ifdef DICKE_HAVE_UMFPACK
class DirectSolver {
 public:
  explicit DirectSolver(const RealSparse& a) {
    lu_.umfpackControl()(UMFPACK_ORDERING) = UMFPACK_ORDERING_METIS;
    lu_.compute(a);
  }
  bool ok() const { return lu_.info() == Eigen::Success; }
  std::string message() const { return "UMFPACK reported a singular matrix"; }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return lu_.solve(b); }

 private:
  Eigen::UmfPackLU<RealSparse> lu_;
};
#else
class DirectSolver {
 public:
  explicit DirectSolver(const RealSparse& a) { lu_.compute(a); }
  bool ok() const { return lu_.info() == Eigen::Success; }
  std::string message() const { return lu_.lastErrorMessage(); }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return lu_.solve(b); }

 private:
  Eigen::SparseLU<RealSparse, Eigen::COLAMDOrdering<int>> lu_;
};
#endif

}  // namespace

SteadyState steady_state(const LiouvillianOp& L, const SteadyStateOptions& options) {
  const Eigen::Index d = L.dim;
  const Eigen::Index n = L.super_dim();
  if (L.matrix.rows() != n || L.matrix.cols() != n)
    throw InvalidParameter("Liouvillian shape does not match its declared dimension");

  const RealSparse a = hermitian_system(L);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b[0] = 1.0;

  const DirectSolver lu(a);
  if (!lu.ok())
    throw AmbiguityError(
        "trace-constrained Liouvillian is singular: the stationary state is not unique (" +
            lu.message() + ")",
        std::numeric_limits<double>::infinity());

  double cond = 0.0;
  {
    const double anorm = norm1(a);
    for (double seed : {0.25, 3.5}) {
      const Eigen::VectorXd z = probe(n, seed);
      const Eigen::VectorXd w = lu.solve(z);
      cond = std::max(cond, anorm * w.lpNorm<1>() / z.lpNorm<1>());
    }
    if (!std::isfinite(cond) || cond > options.ambiguity_condition)
      throw AmbiguityError("stationary state is numerically degenerate (condition estimate " +
                               std::to_string(cond) + ")",
                           cond);
  }

  Eigen::VectorXd x = lu.solve(b);
  for (int k = 0; k < options.refinement_steps; ++k) {
    const Eigen::VectorXd r = b - a * x;
    if (r.lpNorm<Eigen::Infinity>() == 0.0) break;
    x += lu.solve(r);
  }

  const auto normalized_residual = [&](const Eigen::VectorXd& v, DensityMatrix& out) {
    DensityMatrix rho = DensityMatrix::from_vector(expand_hermitian(v, d), d);
    const cplx tr = rho.trace();
    rho = DensityMatrix(rho.matrix() / tr);
    const double res = (L.matrix * rho.vectorized()).lpNorm<Eigen::Infinity>();
    out = std::move(rho);
    return res;
  };

  DensityMatrix rho(DenseMatrix::Zero(d, d));
  double residual = normalized_residual(x, rho);
  bool fallback = false;

  if (!(residual < options.residual_tol)) {
    fallback = true;
    Eigen::BiCGSTAB<RealSparse, Eigen::IncompleteLUT<double>> krylov;
    krylov.preconditioner().setDroptol(1e-12);
    krylov.setTolerance(1e-15);
    krylov.setMaxIterations(static_cast<int>(std::min<Eigen::Index>(20 * n, 200000)));
    krylov.compute(a);
    if (krylov.info() == Eigen::Success) {
      const Eigen::VectorXd y = krylov.solveWithGuess(b, x);
      DensityMatrix candidate(DenseMatrix::Zero(d, d));
      const double r2 = normalized_residual(y, candidate);
      if (r2 < residual) {
        residual = r2;
        rho = std::move(candidate);
      }
    }
    if (!(residual < options.residual_tol))
      throw SolverFailure("steady-state residual " + std::to_string(residual) +
                              " above tolerance after Krylov fallback",
                          residual);
  }

  SteadyState out{rho, residual, std::abs(rho.trace() - 1.0), rho.min_eigenvalue(), cond, fallback};
  if (!(out.trace_error < options.trace_tol))
    throw SolverFailure("steady-state trace error " + std::to_string(out.trace_error), residual);
  if (out.min_eigenvalue < options.min_eigenvalue)
    throw SolverFailure("steady state is not positive: minimum eigenvalue " +
                            std::to_string(out.min_eigenvalue),
                        residual);
  return out;
}

// ---------------------------------------------------------------------------
// Time evolution

EvolveReport evolve(const LiouvillianOp& L, const DensityMatrix& rho0,
                    std::span<const double> t_grid, const TrajectoryObserver& observe,
                    const ode::Options& options) {
  if (rho0.dim() != L.dim)
    throw InvalidParameter("initial state dimension does not match the Liouvillian");
  if (!t_grid.empty() && t_grid.front() < 0.0) throw InvalidParameter("t_grid must start at t >= 0");

  const Eigen::Index d = L.dim;
  const cplx tr0 = rho0.trace();
  EvolveReport report;
  // Row-major copy: the product becomes a gather per row, markedly faster than
  // the column-major scatter for D^2 ~ 2.5e5.
  const Eigen::SparseMatrix<cplx, Eigen::RowMajor> lr = L.matrix;
  auto rhs = [&lr](double, const ComplexVector& y, ComplexVector& dy) { dy.noalias() = lr * y; };
  auto obs = [&](std::size_t idx, double t, const ComplexVector& y) {
    cplx tr(0.0);
    for (Eigen::Index k = 0; k < d; ++k) tr += y[k * d + k];
    report.max_trace_drift = std::max(report.max_trace_drift, std::abs(tr - tr0));
    if (observe) observe(idx, t, y);
  };
  report.stats = ode::integrate<ComplexVector>(rhs, rho0.vectorized(), t_grid, obs, options);
  return report;
}

std::vector<DensityMatrix> evolve(const LiouvillianOp& L, const DensityMatrix& rho0,
                                  std::span<const double> t_grid, const ode::Options& options) {
  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  evolve(
      L, rho0, t_grid,
      [&](std::size_t, double, const ComplexVector& y) {
        out.push_back(DensityMatrix::from_vector(y, L.dim).hermitized());
      },
      options);
  return out;
}

cplx expectation(const SparseOperator& op, const ComplexVector& vec_rho) {
  const Eigen::Index d = op.rows();
  if (op.cols() != d || vec_rho.size() != d * d)
    throw InvalidParameter("operator and state dimensions do not match");
  // Tr[A rho] = sum_ij A_ij rho_ji, rho_ji at index i*D + j.
  cplx acc(0.0);
  for (Eigen::Index c = 0; c < op.outerSize(); ++c)
    for (SparseOperator::InnerIterator it(op, c); it; ++it)
      acc += it.value() * vec_rho[it.row() * d + it.col()];
  return acc;
}

cplx expectation(const SparseOperator& op, const DensityMatrix& rho) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim())
    throw InvalidParameter("operator and state dimensions do not match");
  cplx acc(0.0);
  for (Eigen::Index c = 0; c < op.outerSize(); ++c)
    for (SparseOperator::InnerIterator it(op, c); it; ++it) acc += it.value() * rho(it.col(), it.row());
  return acc;
}

}  // namespace dicke
