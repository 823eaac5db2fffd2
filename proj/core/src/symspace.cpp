#include "dicke/symspace.hpp"

#include <cmath>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

cplx int_power(cplx base, int exponent) {
  cplx result{1.0, 0.0};
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

double log_multinomial(int n, int a, int b, int c) {
  return std::lgamma(n + 1.0) - std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(c + 1.0);
}

SparseOperator diagonal(const std::vector<double>& values) {
  const auto dim = static_cast<Eigen::Index>(values.size());
  SparseOperator op(dim, dim);
  op.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (Eigen::Index i = 0; i < dim; ++i) op.insert(i, i) = values[static_cast<std::size_t>(i)];
  op.makeCompressed();
  return op;
}

}  // namespace

SymmetricBasis::SymmetricBasis(int n_atoms) : n_atoms_(n_atoms) {
  states_.reserve(dimension(n_atoms));
  for (int n1 = n_atoms; n1 >= 0; --n1)
    for (int n2 = n_atoms - n1; n2 >= 0; --n2) states_.push_back({n1, n2, n_atoms - n1 - n2});
}

SymmetricBasis SymmetricBasis::build(int n_atoms, int max_atoms) {
  if (n_atoms < 1)
    throw InvalidParameter("symmetric basis needs N >= 1, got " + std::to_string(n_atoms));
  if (n_atoms > max_atoms)
    throw InvalidParameter("N = " + std::to_string(n_atoms) + " exceeds the configured maximum " +
                           std::to_string(max_atoms));
  return SymmetricBasis(n_atoms);
}

std::optional<std::size_t> SymmetricBasis::index_of(const BasisState& s) const {
  if (s.n1 < 0 || s.n2 < 0 || s.ne < 0 || s.n1 + s.n2 + s.ne != n_atoms_) return std::nullopt;
  // Blocks run n1 = N, N-1, ...; block n1 is preceded by (N-n1)(N-n1+1)/2 states.
  const std::size_t m = static_cast<std::size_t>(n_atoms_ - s.n1);
  return m * (m + 1) / 2 + (m - static_cast<std::size_t>(s.n2));
}

NumberOperators number_operators(const SymmetricBasis& basis) {
  std::vector<double> n1, n2, ne;
  n1.reserve(basis.size());
  n2.reserve(basis.size());
  ne.reserve(basis.size());
  for (const auto& s : basis.states()) {
    n1.push_back(s.n1);
    n2.push_back(s.n2);
    ne.push_back(s.ne);
  }
  return {diagonal(n1), diagonal(n2), diagonal(ne)};
}

SparseOperator lowering_operator(const SymmetricBasis& basis, Branch branch) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const BasisState& s = basis[col];
    if (s.ne == 0) continue;
    BasisState target = s;
    --target.ne;
    int receiving = 0;
    if (branch == Branch::one) {
      receiving = ++target.n1;
    } else {
      receiving = ++target.n2;
    }
    const auto row = basis.index_of(target);
    entries.emplace_back(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col),
                         std::sqrt(static_cast<double>(receiving) * s.ne));
  }
  SparseOperator op(dim, dim);
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

SparseOperator quadrature(const SparseOperator& s) {
  if (s.rows() != s.cols()) throw InvalidParameter("quadrature of a non-square operator");
  SparseOperator adj = s.adjoint();
  return s + adj;
}

SparseOperator identity_operator(const SymmetricBasis& basis) {
  return diagonal(std::vector<double>(basis.size(), 1.0));
}

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) < 1e-12))
    throw InvalidParameter("state vector is not normalized (norm " + std::to_string(norm) + ")");
}

StateVector symmetric_product_state(const SymmetricBasis& basis, cplx c1, cplx c2, cplx c3) {
  const double weight = std::norm(c1) + std::norm(c2) + std::norm(c3);
  if (!(std::abs(weight - 1.0) < 1e-10))
    throw InvalidParameter("single-atom amplitudes must satisfy |c1|^2+|c2|^2+|c3|^2 = 1");
  const int n = basis.atom_count();
  ComplexVector amps(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const BasisState& s = basis[i];
    const double coefficient = std::exp(0.5 * log_multinomial(n, s.n1, s.n2, s.ne));
    amps(static_cast<Eigen::Index>(i)) =
        coefficient * int_power(c1, s.n1) * int_power(c2, s.n2) * int_power(c3, s.ne);
  }
  // Rounding in the multinomial weights leaves |norm - 1| ~ 1e-15.
  amps /= amps.norm();
  return StateVector(std::move(amps));
}

}  // namespace dicke
