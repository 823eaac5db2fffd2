#include "dicke/slowlight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dicke/errors.hpp"
#include "dicke/meanfield.hpp"

namespace dicke {

void MediumParams::validate() const {
  if (!(n_at >= 0.0) || !(mu31 >= 0.0) || !std::isfinite(n_at) || !std::isfinite(mu31))
    throw InvalidParameter("medium density and dipole moment must be finite and non-negative");
  if (!(omega_p > 0.0) || !std::isfinite(omega_p))
    throw InvalidParameter("probe angular frequency must be positive");
  if (!(rate_unit > 0.0) || !std::isfinite(rate_unit))
    throw InvalidParameter("rate unit must be a positive angular frequency");
  if (length && !(*length > 0.0)) throw InvalidParameter("medium length must be positive");
}

double coupling_constant(const MediumParams& m) {
  m.validate();
  return m.n_at * m.mu31 * m.mu31 / (constants::epsilon0 * constants::hbar);
}

double A0(const ModelParams& p) { return 0.5 * p.gamma2 * gamma_eff(p) + 0.25 * p.omega_c * p.omega_c; }

double line_center_slope_analytic(const ModelParams& p) {
  p.validate();
  const double a0 = A0(p);
  if (a0 == 0.0) throw SingularityError("A0 vanishes (gamma2 = 0 and Omega_c = 0)");
  const double g = 0.5 * p.gamma2, oc = 0.5 * p.omega_c;
  return 0.5 * p.n_atoms * p.omega_p * (g * g - oc * oc) / (a0 * a0);
}

double delta_N(const ModelParams& p, const MediumParams& m) {
  p.validate();
  const double a0 = A0(p);
  if (a0 == 0.0) throw SingularityError("A0 vanishes (gamma2 = 0 and Omega_c = 0)");
  const double pre = m.omega_p * coupling_constant(m) / (4.0 * m.rate_unit * m.rate_unit);
  const double g = 0.5 * p.gamma2, oc = 0.5 * p.omega_c;
  return pre * (g * g - oc * oc) / (a0 * a0);
}

GroupVelocityResult group_result(const ModelParams& p, const MediumParams& m) {
  const double d = delta_N(p, m);
  if (!(1.0 + d > 0.0))
    throw SuperluminalRegime("1 + delta(N) = " + std::to_string(1.0 + d) +
                             " <= 0: outside the linear-dispersion description");
  GroupVelocityResult r;
  r.delta = d;
  r.n_g = 1.0 + d;
  r.vg_over_c = 1.0 / (1.0 + d);
  r.vg = constants::c * r.vg_over_c;
  return r;
}

std::vector<VgRow> vg_ratio_scan(const ModelParams& base, const MediumParams& m,
                                 const std::vector<int>& n_list) {
  if (std::find(n_list.begin(), n_list.end(), 1) == n_list.end())
    throw InvalidParameter("N list must contain 1 (the ratio reference)");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ModelParams p1 = base;
  p1.n_atoms = 1;
  const double d1 = delta_N(p1, m);
  const bool ref_ok = 1.0 + d1 > 0.0;

  std::vector<VgRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    if (n < 1) throw InvalidParameter("N list entries must be positive");
    ModelParams p = base;
    p.n_atoms = n;
    VgRow row;
    row.n = n;
    row.delta = delta_N(p, m);
    row.superluminal = !(1.0 + row.delta > 0.0);
    row.vg_over_c = row.superluminal ? nan : 1.0 / (1.0 + row.delta);
    row.ratio = (row.superluminal || !ref_ok) ? nan : (n == 1 ? 1.0 : (1.0 + d1) / (1.0 + row.delta));
    rows.push_back(row);
  }
  return rows;
}

double asymptotic_K(const ModelParams& p, const MediumParams& m) {
  p.validate();
  if (!(p.gamma2 > 0.0)) throw InvalidParameter("asymptotic K needs gamma2 > 0");
  const double g31 = p.gamma31 * m.rate_unit;
  if (!(g31 > 0.0)) throw InvalidParameter("asymptotic K needs Gamma31 > 0");
  const double r = p.omega_c * p.omega_c / (p.gamma2 * p.gamma2);
  return m.omega_p * coupling_constant(m) / (4.0 * g31 * g31) * std::abs(1.0 - r);
}

double asymptotic_vg_over_c(const ModelParams& p, const MediumParams& m) {
  const double k = asymptotic_K(p, m);
  const double r = p.omega_c * p.omega_c / (p.gamma2 * p.gamma2);
  const double sgn = (1.0 - r) > 0.0 ? 1.0 : ((1.0 - r) < 0.0 ? -1.0 : 0.0);
  const double n = p.n_atoms;
  return 1.0 - sgn * k / (n * n);
}

double pulse_delay(const GroupVelocityResult& r, const MediumParams& m) {
  if (!m.length) throw MissingLength("pulse delay needs the medium length");
  return *m.length / r.vg;
}

ConsistencyCheck eit_consistency_check(const ModelParams& p) {
  p.validate();
  if (!(p.gamma2 > 0.0)) throw InvalidParameter("consistency check needs gamma2 > 0");
  ConsistencyCheck c;
  c.gamma_eff = gamma_eff(p);
  c.bound = p.omega_c * p.omega_c / (4.0 * p.gamma2);
  c.bound_2g2 = p.omega_c * p.omega_c / (2.0 * p.gamma2);
  c.satisfied = c.gamma_eff <= c.bound;
  return c;
}

// ---------------------------------------------------------------------------

namespace {
constexpr double kSodiumGammaHz = 5e6;
constexpr double kSodiumLambda = 589e-9;
}  // namespace

ModelParams sodium_params(int n_atoms) {
  ModelParams p;
  p.n_atoms = n_atoms;
  p.gamma31 = 1.0;
  p.gamma32 = 1.0;
  p.gamma3 = 0.0;
  p.gamma2 = 0.5e3 / kSodiumGammaHz;
  p.omega_c = 1.5e6 / kSodiumGammaHz;
  return p;
}

MediumParams sodium_medium() {
  MediumParams m;
  m.n_at = 1e20;
  m.mu31 = 3.0e-29;
  m.omega_p = 2.0 * constants::pi * constants::c / kSodiumLambda;
  m.rate_unit = 2.0 * constants::pi * kSodiumGammaHz;
  return m;
}

ModelParams strong_slow_light_params(int n_atoms) {
  ModelParams p = sodium_params(n_atoms);
  p.omega_c = 0.5 * p.gamma2;
  return p;
}

MediumParams strong_slow_light_medium() {
  MediumParams m = sodium_medium();
  m.n_at = 1e22;
  return m;
}

SodiumReport sodium_demo(int n_atoms, double vg1) {
  const ModelParams p = sodium_params(n_atoms);
  const ConsistencyCheck c = eit_consistency_check(p);
  SodiumReport r;
  r.n_atoms = n_atoms;
  r.gamma_eff_hz = c.gamma_eff * kSodiumGammaHz;
  r.bound_hz = c.bound * kSodiumGammaHz;
  r.bound_2g2_hz = c.bound_2g2 * kSodiumGammaHz;
  r.consistent = c.satisfied;
  r.vg1 = vg1;
  r.vg = static_cast<double>(n_atoms) * n_atoms * vg1;
  r.vg_over_c = r.vg / constants::c;
  return r;
}

}  // namespace dicke
