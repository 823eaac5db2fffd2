#include "oracles.hpp"

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include <dicke/errors.hpp>
#include <dicke/meanfield.hpp>

namespace dicke::oracle {

ProjectedState brute_force_product_state(const SymmetricBasis& basis, cplx c1, cplx c2, cplx c3) {
  const int n = basis.atom_count();
  if (n > 10) throw InvalidParameter("brute-force expansion limited to N <= 10");
  const std::array<cplx, 3> c{c1, c2, c3};

  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= 3;

  const std::size_t d = basis.size();
  ComplexVector sum = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  std::vector<double> count(d, 0.0);
  double full_norm = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    BasisState occ;
    cplx amp = 1.0;
    std::size_t rest = idx;
    for (int k = 0; k < n; ++k) {
      const int level = static_cast<int>(rest % 3);
      rest /= 3;
      amp *= c[level];
      if (level == 0) ++occ.n1;
      else if (level == 1) ++occ.n2;
      else ++occ.ne;
    }
    full_norm += std::norm(amp);
    const std::size_t j = *basis.index_of(occ);
    sum(static_cast<Eigen::Index>(j)) += amp;
    count[j] += 1.0;
  }

  ProjectedState out;
  out.amplitudes.resize(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j)
    out.amplitudes(static_cast<Eigen::Index>(j)) = sum(static_cast<Eigen::Index>(j)) / std::sqrt(count[j]);
  out.leakage = full_norm - out.amplitudes.squaredNorm();
  return out;
}

DenseMatrix bloch_generator_n1(const ModelParams& p, const SymmetricBasis& basis) {
  if (basis.atom_count() != 1) throw InvalidParameter("Bloch generator oracle is single-atom only");
  using M3 = Eigen::Matrix3cd;
  auto ket = [](int a, int b) {
    M3 m = M3::Zero();
    m(a, b) = 1.0;
    return m;
  };
  // level 0 = |1>, 1 = |2>, 2 = |3>
  M3 h = M3::Zero();
  h(2, 2) = p.delta1;
  h(1, 1) = p.delta1 - p.delta2;
  h(0, 2) = h(2, 0) = 0.5 * p.omega_p;
  h(1, 2) = h(2, 1) = 0.5 * p.omega_c;

  std::vector<M3> ops;
  ops.push_back(std::sqrt(p.gamma31) * ket(0, 2));
  ops.push_back(std::sqrt(p.gamma32) * ket(1, 2));
  if (p.dephasing == DephasingModel::raman) {
    ops.push_back(std::sqrt(p.gamma_phi) * (ket(0, 0) - ket(1, 1)));
  } else {
    ops.push_back(std::sqrt(p.gamma2) * ket(1, 1));
    ops.push_back(std::sqrt(p.gamma3) * ket(2, 2));
  }

  const cplx I(0.0, 1.0);
  auto rhs = [&](const M3& rho) {
    M3 out = -I * (h * rho - rho * h);
    for (const M3& c : ops) {
      const M3 cdc = c.adjoint() * c;
      out += c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc);
    }
    return out;
  };

  std::array<std::size_t, 3> pos{};
  pos[0] = *basis.index_of({1, 0, 0});
  pos[1] = *basis.index_of({0, 1, 0});
  pos[2] = *basis.index_of({0, 0, 1});

  DenseMatrix g = DenseMatrix::Zero(9, 9);
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const M3 d = rhs(ket(k, l));
      const auto col = static_cast<Eigen::Index>(pos[l] * 3 + pos[k]);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(static_cast<Eigen::Index>(pos[j] * 3 + pos[i]), col) = d(i, j);
    }
  }
  return g;
}

double fd_line_center_slope(const ModelParams& params, double h) {
  const double n = params.n_atoms;
  const double fp = rho31_linear(params, h).real();
  const double fm = rho31_linear(params, -h).real();
  return n * (fp - fm) / (2.0 * h);
}

}  // namespace dicke::oracle
