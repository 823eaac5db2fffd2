#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dicke {

using cplx = std::complex<double>;

/// Sparse complex operator on the symmetric subspace (or its superoperator space).
using SparseOperator = Eigen::SparseMatrix<cplx>;

using DenseMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

}  // namespace dicke
