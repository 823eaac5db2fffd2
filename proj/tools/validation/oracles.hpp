#pragma once

// Independent reference computations used by the validation suite and the
// unit tests. None of them reuses the code path it checks.

#include <dicke/params.hpp>
#include <dicke/symspace.hpp>
#include <dicke/types.hpp>

namespace dicke::oracle {

struct ProjectedState {
  ComplexVector amplitudes;  // in SymmetricBasis order
  double leakage = 0.0;      // 1 - squared norm of the symmetric projection
};

/// Expands (c1|1> + c2|2> + c3|3>)^{(x)N} over all 3^N product states and
/// projects onto normalized Dicke states by explicit configuration counting.
ProjectedState brute_force_product_state(const SymmetricBasis& basis, cplx c1, cplx c2, cplx c3);

/// Single-atom optical Bloch generator, written out with 3x3 matrices in the
/// level basis and arranged in the column-stacked order of `basis` (N = 1).
DenseMatrix bloch_generator_n1(const ModelParams& params, const SymmetricBasis& basis);

/// Central difference of N Re rho31_linear at Delta1 = 0 with step h.
double fd_line_center_slope(const ModelParams& params, double h = 1e-6);

}  // namespace dicke::oracle
