#pragma once

#include <random>

#include <Eigen/Dense>

#include <dicke/types.hpp>

namespace dicke::test {

/// Random full-rank density matrix of dimension d (fixed seed per call site).
inline DenseMatrix random_density(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  DenseMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

inline double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace dicke::test
