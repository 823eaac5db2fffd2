#include "dicke/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

const cplx kI(0.0, 1.0);

// sigma_ij = |i><j| with levels 1, 2, 3 at indices 0, 1, 2.
RepMatrix sigma(int i, int j) {
  RepMatrix m = RepMatrix::Zero();
  m(i - 1, j - 1) = 1.0;
  return m;
}

struct Sigmas {
  RepMatrix s13 = sigma(1, 3), s31 = sigma(3, 1), s23 = sigma(2, 3), s32 = sigma(3, 2);
  RepMatrix s22 = sigma(2, 2), s33 = sigma(3, 3);
  RepMatrix x31 = s31 + s13, y31 = -kI * (s31 - s13);
  RepMatrix x32 = s32 + s23, y32 = -kI * (s32 - s23);
};

const Sigmas& sig() {
  static const Sigmas s;
  return s;
}

RepMatrix comm(const RepMatrix& a, const RepMatrix& b) { return a * b - b * a; }

double expect(const RepMatrix& op, const RepMatrix& rho) { return (op * rho).trace().real(); }

double max_abs(const RepMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

// ---------------------------------------------------------------------------

RepState RepState::ground() {
  RepMatrix m = RepMatrix::Zero();
  m(0, 0) = 1.0;
  return RepState(m);
}

RepState RepState::pure(cplx c1, cplx c2, cplx c3) {
  const double w = std::norm(c1) + std::norm(c2) + std::norm(c3);
  if (std::abs(w - 1.0) >= 1e-10)
    throw InvalidParameter("single-atom amplitudes are not normalized (weight " +
                           std::to_string(w) + ")");
  Eigen::Vector3cd psi(c1, c2, c3);
  psi /= std::sqrt(w);
  return RepState(psi * psi.adjoint());
}

double RepState::hermiticity_error() const { return max_abs(rho_ - rho_.adjoint()); }

double RepState::trace_error() const { return std::abs(rho_.trace() - 1.0); }

double RepState::min_eigenvalue() const {
  const RepMatrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<RepMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void RepState::check(double tol, double min_eig) const {
  if (hermiticity_error() > tol)
    throw InvalidData("representative state not Hermitian (" + std::to_string(hermiticity_error()) + ")");
  if (trace_error() > tol)
    throw InvalidData("representative state trace off by " + std::to_string(trace_error()));
  if (min_eigenvalue() < min_eig)
    throw InvalidData("representative state has eigenvalue " + std::to_string(min_eigenvalue()));
}

// ---------------------------------------------------------------------------
// Closed forms

double gamma_eff(const ModelParams& p) {
  return 0.5 * (p.gamma31 + p.gamma32) + p.gamma3 + p.gamma31 * (p.n_atoms - 1);
}

namespace {

// (i/2) t / (g t + oc^2/4) with t the two-photon factor and g the optical one.
cplx linear_response(cplx g, cplx t, double omega_c) {
  const double oc2 = omega_c * omega_c / 4.0;
  const cplx den = g * t + oc2;
  if (std::abs(den) == 0.0)
    throw SingularityError("linear-response denominator vanishes (gamma2 = 0 at two-photon "
                           "resonance with no control field, or zero linewidth)");
  return 0.5 * kI * t / den;
}

}  // namespace

cplx chi_mf(const ModelParams& p, double delta1) {
  const cplx g = gamma_eff(p) - kI * delta1;
  const cplx t = p.gamma2 / 2 - kI * (delta1 - p.delta2);
  return linear_response(g, t, p.omega_c);
}

cplx rho31_linear(const ModelParams& p, double delta1) {
  const cplx g = gamma_eff(p) + kI * delta1;
  const cplx t = p.gamma2 / 2 + kI * (delta1 - p.delta2);
  return p.omega_p * linear_response(g, t, p.omega_c);
}

// ---------------------------------------------------------------------------
// Representative master equation

RepMatrix rep_hamiltonian(const RepMatrix& rho, const ModelParams& p) {
  const auto& s = sig();
  RepMatrix h = p.delta1 * s.s33 + (p.delta1 - p.delta2) * s.s22 -
                0.5 * (p.omega_p * s.x31 + p.omega_c * s.x32);
  const double fb = p.n_atoms - 1.0;
  if (fb != 0.0) {
    h += 0.5 * p.gamma31 * fb * (expect(s.x31, rho) * s.y31 - expect(s.y31, rho) * s.x31);
    h += 0.5 * p.gamma32 * fb * (expect(s.x32, rho) * s.y32 - expect(s.y32, rho) * s.x32);
  }
  return h;
}

RepMatrix rep_rhs(const RepMatrix& rho, const ModelParams& p) {
  const auto& s = sig();
  const RepMatrix h = rep_hamiltonian(rho, p);
  RepMatrix d = -kI * comm(h, rho);
  d += 0.5 * p.gamma31 * (comm(s.s13, rho * s.s31) - comm(s.s31, s.s13 * rho));
  d += 0.5 * p.gamma32 * (comm(s.s23, rho * s.s32) - comm(s.s32, s.s23 * rho));
  d -= 0.5 * p.gamma2 * comm(s.s22, comm(s.s22, rho));
  d -= 0.5 * p.gamma3 * comm(s.s33, comm(s.s33, rho));
  return d;
}

ode::Stats rep_evolve(const RepState& rho0, const ModelParams& params,
                      std::span<const double> t_grid, const RepObserver& observe,
                      const ode::Options& options) {
  params.validate();
  if (!t_grid.empty() && t_grid.front() < 0.0) throw InvalidParameter("t_grid must start at t >= 0");
  auto rhs = [&params](double, const RepMatrix& y, RepMatrix& dy) { dy = rep_rhs(y, params); };
  auto obs = [&](std::size_t i, double t, const RepMatrix& y) {
    if (observe) observe(i, t, y);
  };
  return ode::integrate<RepMatrix>(rhs, rho0.rho(), t_grid, obs, options);
}

std::vector<RepState> rep_evolve(const RepState& rho0, const ModelParams& params,
                                 std::span<const double> t_grid, const ode::Options& options) {
  std::vector<RepState> out;
  out.reserve(t_grid.size());
  rep_evolve(
      rho0, params, t_grid,
      [&](std::size_t, double, const RepMatrix& y) { out.emplace_back(0.5 * (y + y.adjoint())); },
      options);
  return out;
}

// ---------------------------------------------------------------------------
// Steady state

namespace {

using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat9 = Eigen::Matrix<double, 9, 9>;

Vec9 pack(const RepMatrix& m) {
  Vec9 x;
  x << m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(1, 0).real(), m(1, 0).imag(),
      m(2, 0).real(), m(2, 0).imag(), m(2, 1).real(), m(2, 1).imag();
  return x;
}

RepMatrix unpack(const Vec9& x) {
  RepMatrix m;
  m(0, 0) = x[0];
  m(1, 1) = x[1];
  m(2, 2) = x[2];
  m(1, 0) = cplx(x[3], x[4]);
  m(2, 0) = cplx(x[5], x[6]);
  m(2, 1) = cplx(x[7], x[8]);
  m(0, 1) = std::conj(m(1, 0));
  m(0, 2) = std::conj(m(2, 0));
  m(1, 2) = std::conj(m(2, 1));
  return m;
}

// Stationarity equations with the first (redundant) population equation
// replaced by the trace constraint.
Vec9 newton_residual(const Vec9& x, const ModelParams& p) {
  Vec9 f = pack(rep_rhs(unpack(x), p));
  f[0] = x[0] + x[1] + x[2] - 1.0;
  return f;
}

double state_residual(const RepMatrix& rho, const ModelParams& p) { return max_abs(rep_rhs(rho, p)); }

// Returns true on convergence; x is updated in place.
bool newton(Vec9& x, const ModelParams& p, const RepSteadyOptions& opt, int& iterations) {
  Vec9 f = newton_residual(x, p);
  for (iterations = 0; iterations < opt.newton_iterations; ++iterations) {
    const RepMatrix rho = unpack(x);
    if (state_residual(rho, p) < opt.residual_tol && std::abs(f[0]) < opt.residual_tol) return true;
    Mat9 jac;
    for (int k = 0; k < 9; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[k]));
      Vec9 xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      jac.col(k) = (newton_residual(xp, p) - newton_residual(xm, p)) / (2 * h);
    }
    Eigen::FullPivLU<Mat9> lu(jac);
    if (!lu.isInvertible()) return false;
    const Vec9 dx = lu.solve(-f);
    double step = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 12; ++ls, step *= 0.5) {
      const Vec9 xn = x + step * dx;
      const Vec9 fn = newton_residual(xn, p);
      if (fn.norm() < f.norm() || fn.norm() < opt.residual_tol) {
        x = xn;
        f = fn;
        improved = true;
        break;
      }
    }
    if (!improved) {
      iterations += 1;
      const RepMatrix r = unpack(x);
      return state_residual(r, p) < opt.residual_tol;
    }
  }
  return state_residual(unpack(x), p) < opt.residual_tol;
}

}  // namespace

RepSteadyState rep_steady_state(const ModelParams& params, const RepSteadyOptions& opt) {
  params.validate();
  RepMatrix rho = RepState::ground().rho();
  double t = 0.0;
  double chunk = 1.0;
  double march_tol = opt.march_tol;
  double res = state_residual(rho, params);

  if (opt.newton_first) {
    Vec9 x = pack(rho);
    int iters = 0;
    if (newton(x, params, opt, iters)) {
      RepState st(unpack(x));
      if (st.min_eigenvalue() >= -1e-8) return {st, state_residual(st.rho(), params), 0.0, iters};
    }
  }

  ode::Options ode_opt;
  ode_opt.rtol = 1e-10;
  ode_opt.atol = 1e-13;

  while (true) {
    while (res >= march_tol && res >= opt.residual_tol) {
      if (t >= opt.t_max)
        throw ConvergenceError("representative steady state not reached by t = " +
                                   std::to_string(t) + " (residual " + std::to_string(res) + ")",
                               res);
      const double times[2] = {t, t + chunk};
      ode::integrate<RepMatrix>(
          [&params](double, const RepMatrix& y, RepMatrix& dy) { dy = rep_rhs(y, params); }, rho,
          std::span<const double>(times, 2),
          [&rho](std::size_t i, double, const RepMatrix& y) {
            if (i == 1) rho = y;
          },
          ode_opt);
      rho = 0.5 * (rho + rho.adjoint());
      t += chunk;
      chunk = std::min(2 * chunk, opt.t_max);
      res = state_residual(rho, params);
    }
    if (res < opt.residual_tol) {
      return {RepState(rho), res, t, 0};
    }
    Vec9 x = pack(rho);
    int iters = 0;
    if (newton(x, params, opt, iters)) {
      RepState st(unpack(x));
      if (st.min_eigenvalue() >= -1e-8) return {st, state_residual(st.rho(), params), t, iters};
    }
    // Newton wandered off; march closer to the attractor and retry.
    march_tol *= 1e-2;
    if (march_tol < opt.residual_tol) march_tol = opt.residual_tol;
  }
}

ChannelIntensities mf_intensities(const RepMatrix& rho, const ModelParams& p) {
  const double n = p.n_atoms;
  const double pop = rho(2, 2).real();
  return {p.gamma31 * (n * pop + n * (n - 1) * std::norm(rho(2, 0))),
          p.gamma32 * (n * pop + n * (n - 1) * std::norm(rho(2, 1)))};
}

}  // namespace dicke
