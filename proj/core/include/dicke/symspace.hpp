#pragma once

// Permutation-symmetric (Dicke) subspace of N three-level atoms and the
// collective operators acting on it.

#include <cstddef>
#include <optional>
#include <vector>

#include "dicke/types.hpp"

namespace dicke {

inline constexpr int kDefaultMaxAtoms = 60;

/// Occupations of |1>, |2> and the excited level |3>.
struct BasisState {
  int n1 = 0;
  int n2 = 0;
  int ne = 0;

  friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// States |n1,n2,ne> with n1+n2+ne = N, in descending lexicographic order of (n1, n2), so index 0 is |N,0,0>.
/// Immutable once built.
class SymmetricBasis {
 public:
  static SymmetricBasis build(int n_atoms, int max_atoms = kDefaultMaxAtoms);

  int atom_count() const noexcept { return n_atoms_; }
  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<BasisState>& states() const noexcept { return states_; }
  const BasisState& operator[](std::size_t i) const { return states_[i]; }

  /// Position of a state, or nullopt when it is not in this basis.
  std::optional<std::size_t> index_of(const BasisState& s) const;

  static std::size_t dimension(int n_atoms) {
    return static_cast<std::size_t>(n_atoms + 1) * static_cast<std::size_t>(n_atoms + 2) / 2;
  }

 private:
  explicit SymmetricBasis(int n_atoms);

  int n_atoms_;
  std::vector<BasisState> states_;
};

struct NumberOperators {
  SparseOperator n1;
  SparseOperator n2;
  SparseOperator ne;
};

enum class Branch { one = 1, two = 2 };

NumberOperators number_operators(const SymmetricBasis& basis);

/// S1: |n1,n2,ne> -> sqrt((n1+1) ne) |n1+1,n2,ne-1>, S2 analogously on n2.
SparseOperator lowering_operator(const SymmetricBasis& basis, Branch branch);

/// S + S^dagger.
SparseOperator quadrature(const SparseOperator& s);

SparseOperator identity_operator(const SymmetricBasis& basis);

/// Normalized pure state on the symmetric subspace.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  DenseMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  ComplexVector amplitudes_;
};

/// The N-fold product (c1|1> + c2|2> + c3|3>)^N written in the Dicke basis:
/// amplitude sqrt(N!/(n1! n2! ne!)) c1^n1 c2^n2 c3^ne.
StateVector symmetric_product_state(const SymmetricBasis& basis, cplx c1, cplx c2, cplx c3);

}  // namespace dicke
