#include "dicke/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "dicke/csv.hpp"
#include "dicke/errors.hpp"
#include "dicke/parallel.hpp"
#include "dicke/symspace.hpp"

namespace dicke {

std::string to_string(ScanMethod m) {
  switch (m) {
    case ScanMethod::exact: return "exact";
    case ScanMethod::meanfield: return "meanfield";
    case ScanMethod::analytic: return "analytic";
  }
  return "unknown";
}

std::vector<double> SpectrumScan::im() const {
  std::vector<double> v(chi.size());
  std::transform(chi.begin(), chi.end(), v.begin(), [](cplx c) { return c.imag(); });
  return v;
}

std::vector<double> SpectrumScan::re() const {
  std::vector<double> v(chi.size());
  std::transform(chi.begin(), chi.end(), v.begin(), [](cplx c) { return c.real(); });
  return v;
}

void SpectrumScan::validate() const {
  if (grid.size() != chi.size())
    throw InvalidData("scan has " + std::to_string(grid.size()) + " grid points but " +
                      std::to_string(chi.size()) + " values");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidData("scan grid is not strictly increasing");
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw InvalidParameter("grid needs n >= 2 points and hi > lo");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  // Symmetric grids hit 0 exactly at the midpoint.
  if (n % 2 == 1 && lo == -hi) g[n / 2] = 0.0;
  return g;
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidParameter("empty detuning grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidParameter("detuning grid must be strictly increasing");
}

// Rethrows the in-flight exception with the grid point prepended, keeping its type.
[[noreturn]] void rethrow_at(std::size_t k, double delta1) {
  const std::string at = "grid point " + std::to_string(k) + " (Delta1 = " + std::to_string(delta1) + "): ";
  try {
    throw;
  } catch (const SolverFailure& e) {
    throw SolverFailure(at + e.what(), e.residual());
  } catch (const AmbiguityError& e) {
    throw AmbiguityError(at + e.what(), e.condition_estimate());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(at + e.what(), e.residual());
  } catch (const StiffnessError& e) {
    throw StiffnessError(at + e.what(), e.time());
  } catch (const SingularityError& e) {
    throw SingularityError(at + e.what());
  } catch (const InvalidParameter& e) {
    throw InvalidParameter(at + e.what());
  } catch (const Error& e) {
    throw Error(at + e.what());
  }
}

template <class PointFn>
void run_points(SpectrumScan& scan, const ScanOptions& options, PointFn&& point) {
  const std::size_t n = scan.grid.size();
  scan.chi.assign(n, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
  scan.diagnostics.assign(n, {});
  std::vector<std::string> messages(n);
  std::vector<char> failed(n, 0);
  parallel_for(n, options.workers, [&](std::size_t k) {
    try {
      point(k);
    } catch (const Error& e) {
      if (!options.keep_going) rethrow_at(k, scan.grid[k]);
      failed[k] = 1;
      messages[k] = e.what();
    }
  });
  for (std::size_t k = 0; k < n; ++k)
    if (failed[k]) scan.failures.push_back({k, scan.grid[k], messages[k]});
}

}  // namespace

SpectrumScan scan_exact(const ModelParams& params, const std::vector<double>& grid,
                        const ScanOptions& options) {
  params.validate();
  check_grid(grid);
  if (!(params.omega_p > 0.0)) throw InvalidParameter("exact susceptibility needs Omega_p > 0");

  SpectrumScan scan;
  scan.method = ScanMethod::exact;
  scan.grid = grid;
  scan.params = params;
  scan.n_scaled = options.n_scaled;

  const SymmetricBasis basis = SymmetricBasis::build(params.n_atoms);
  const SparseOperator s1 = lowering_operator(basis, Branch::one);
  const double norm = options.n_scaled ? params.omega_p : params.n_atoms * params.omega_p;

  run_points(scan, options, [&](std::size_t k) {
    ModelParams p = params;
    p.delta1 = grid[k];
    const SteadyState ss = steady_state(build_liouvillian(p, basis), options.steady);
    scan.chi[k] = std::conj(expectation(s1, ss.rho)) / norm;
    scan.diagnostics[k] = {ss.residual, ss.trace_error, ss.min_eigenvalue};
  });
  return scan;
}

SpectrumScan scan_mf(const ModelParams& params, const std::vector<double>& grid, MfMode mode,
                     const ScanOptions& options) {
  params.validate();
  check_grid(grid);

  SpectrumScan scan;
  scan.method = mode == MfMode::analytic ? ScanMethod::analytic : ScanMethod::meanfield;
  scan.grid = grid;
  scan.params = params;
  scan.n_scaled = options.n_scaled;
  const double scale = options.n_scaled ? params.n_atoms : 1.0;

  if (mode == MfMode::analytic) {
    run_points(scan, options, [&](std::size_t k) { scan.chi[k] = scale * chi_mf(params, grid[k]); });
    return scan;
  }

  if (!(params.omega_p > 0.0)) throw InvalidParameter("ode-mode susceptibility needs Omega_p > 0");
  run_points(scan, options, [&](std::size_t k) {
    ModelParams p = params;
    p.delta1 = -grid[k];
    p.delta2 = -params.delta2;
    const RepSteadyState st = rep_steady_state(p, options.rep);
    scan.chi[k] = scale * st.state(2, 0) / params.omega_p;
    scan.diagnostics[k] = {st.residual, st.state.trace_error(), st.state.min_eigenvalue()};
  });
  return scan;
}

SpectrumScan interpolate(const SpectrumScan& scan, const std::vector<double>& grid) {
  scan.validate();
  check_grid(grid);
  const auto& g = scan.grid;
  if (g.size() < 2 || grid.front() < g.front() || grid.back() > g.back())
    throw GridMismatch("target grid extends beyond the scanned range");
  SpectrumScan out = scan;
  out.grid = grid;
  out.chi.resize(grid.size());
  out.diagnostics.clear();
  out.failures.clear();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    auto it = std::upper_bound(g.begin(), g.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - g.begin());
    if (hi >= g.size()) hi = g.size() - 1;
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double w = (x - g[lo]) / (g[hi] - g[lo]);
    out.chi[i] = (1.0 - w) * scan.chi[lo] + w * scan.chi[hi];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lineshape metrics

namespace {

std::size_t nearest_zero(const std::vector<double>& g) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.size(); ++i)
    if (std::abs(g[i]) < std::abs(g[best])) best = i;
  return best;
}

double interp_at(const std::vector<double>& g, const std::vector<double>& f, double x) {
  if (x <= g.front()) return f.front();
  if (x >= g.back()) return f.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), x) - g.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - g[lo]) / (g[hi] - g[lo]);
  return (1.0 - w) * f[lo] + w * f[hi];
}

}  // namespace

DipShape find_dip(const SpectrumScan& scan) {
  scan.validate();
  const auto& g = scan.grid;
  const std::vector<double> f = scan.im();
  const std::size_t n = g.size();
  if (n < 5) throw NoDipError("scan too short to resolve a dip");
  for (double v : f)
    if (!std::isfinite(v)) throw NoDipError("scan contains non-finite values");

  // Descend from the point nearest 0 to a local minimum.
  std::size_t k = nearest_zero(g);
  while (true) {
    if (k > 0 && f[k - 1] < f[k])
      --k;
    else if (k + 1 < n && f[k + 1] < f[k])
      ++k;
    else
      break;
  }
  if (k == 0 || k + 1 == n) throw NoDipError("Im chi has no interior minimum near Delta1 = 0");

  // Climb to the neighbouring maxima; their distance estimates the peak separation.
  std::size_t l = k, r = k;
  while (l > 0 && f[l - 1] >= f[l]) --l;
  while (r + 1 < n && f[r + 1] >= f[r]) ++r;
  const double sep = g[r] - g[l];

  double shoulder = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > l && i < r) continue;  // dip core
    if (std::abs(g[i]) <= 5.0 * sep) shoulder = std::max(shoulder, f[i]);
  }
  const double depth = shoulder - f[k];
  if (!(depth > 1e-12 * std::max(std::abs(shoulder), 1e-300)))
    throw NoDipError("transparency dip depth is negligible");

  const double level = 0.5 * (shoulder + f[k]);
  std::size_t a = k;
  while (a > 0 && f[a] < level) --a;
  std::size_t b = k;
  while (b + 1 < n && f[b] < level) ++b;
  if (f[a] < level || f[b] < level) throw NoDipError("half-dip level not crossed inside the scan");

  DipShape d;
  d.dip_index = k;
  d.dip_value = f[k];
  d.shoulder = shoulder;
  d.left_crossing = g[a] + (level - f[a]) * (g[a + 1] - g[a]) / (f[a + 1] - f[a]);
  d.right_crossing = g[b - 1] + (level - f[b - 1]) * (g[b] - g[b - 1]) / (f[b] - f[b - 1]);
  return d;
}

double eit_width(const SpectrumScan& scan) { return find_dip(scan).width(); }

double on_resonance_absorption(const SpectrumScan& scan) {
  scan.validate();
  return interp_at(scan.grid, scan.im(), 0.0);
}

double eit_contrast(const SpectrumScan& scan, double exclusion_halfwidth) {
  const double excl = exclusion_halfwidth > 0.0 ? exclusion_halfwidth : 2.0 * eit_width(scan);
  if (exclusion_halfwidth > 0.0) find_dip(scan);  // still requires a dip
  const std::vector<double> f = scan.im();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(scan.grid[i]) > excl) best = std::max(best, f[i]);
  if (!std::isfinite(best) || best <= 0.0)
    throw NoDipError("no absorption outside the exclusion interval");
  return 1.0 - on_resonance_absorption(scan) / best;
}

SlopeEstimate line_center_slope(const SpectrumScan& scan, double max_spacing) {
  scan.validate();
  const auto& g = scan.grid;
  if (g.size() < 3) throw InvalidData("slope needs at least three grid points");
  if (g.front() > 0.0 || g.back() < 0.0) throw InvalidData("grid does not bracket Delta1 = 0");
  std::size_t k = nearest_zero(g);
  k = std::clamp<std::size_t>(k, 1, g.size() - 2);
  SlopeEstimate s;
  s.slope = (scan.chi[k + 1].real() - scan.chi[k - 1].real()) / (g[k + 1] - g[k - 1]);
  s.spacing = 0.5 * (g[k + 1] - g[k - 1]);
  s.resolution_warning = s.spacing > max_spacing;
  return s;
}

EitMetrics eit_metrics(const SpectrumScan& scan) {
  EitMetrics m;
  m.on_res_absorption = on_resonance_absorption(scan);
  m.slope = line_center_slope(scan);
  try {
    m.width = eit_width(scan);
    m.contrast = eit_contrast(scan);
  } catch (const NoDipError&) {
    m.width.reset();
    m.contrast.reset();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Agreement

namespace {

double rel_norm(const std::vector<double>& a, const std::vector<double>& b, bool inf_norm) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (inf_norm) {
      num = std::max(num, d);
      den = std::max(den, std::abs(a[i]));
    } else {
      num += d * d;
      den += a[i] * a[i];
    }
  }
  if (!inf_norm) {
    num = std::sqrt(num);
    den = std::sqrt(den);
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

AgreementMetrics agreement(const SpectrumScan& a, const SpectrumScan& b) {
  a.validate();
  b.validate();
  if (a.grid.size() != b.grid.size()) throw GridMismatch("scans have different grid lengths");
  for (std::size_t i = 0; i < a.grid.size(); ++i)
    if (std::abs(a.grid[i] - b.grid[i]) > 1e-12 * std::max(1.0, std::abs(a.grid[i])))
      throw GridMismatch("scans are on different grids (index " + std::to_string(i) + ")");

  AgreementMetrics m;
  const auto ai = a.im(), bi = b.im(), ar = a.re(), br = b.re();
  m.eps2_im = rel_norm(ai, bi, false);
  m.eps2_re = rel_norm(ar, br, false);
  m.eps_inf_im = rel_norm(ai, bi, true);
  m.eps_inf_re = rel_norm(ar, br, true);
  m.eps2 = std::max(m.eps2_im, m.eps2_re);
  m.eps_inf = std::max(m.eps_inf_im, m.eps_inf_re);
  m.eps0_im = std::abs(on_resonance_absorption(b) - on_resonance_absorption(a));
  if (a.grid.size() >= 3 && a.grid.front() <= 0.0 && a.grid.back() >= 0.0)
    m.eps0_slope = std::abs(line_center_slope(b).slope - line_center_slope(a).slope);

  try {
    const double wa = eit_width(a), wb = eit_width(b);
    m.eps_width = std::abs(wb - wa) / wa;
    m.eps_contrast = std::abs(eit_contrast(b) - eit_contrast(a));
  } catch (const NoDipError&) {
    m.eps_width.reset();
    m.eps_contrast.reset();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Serialization

void write_scan_csv(std::ostream& out, const SpectrumScan& scan, bool timestamp) {
  scan.validate();
  csv::Writer w(out, {"delta1", "re_chi", "im_chi"}, timestamp);
  for (std::size_t i = 0; i < scan.grid.size(); ++i)
    w.row({scan.grid[i], scan.chi[i].real(), scan.chi[i].imag()});
}

namespace {

nlohmann::json opt(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(const EitMetrics& m) {
  return {{"width", opt(m.width)},
          {"contrast", opt(m.contrast)},
          {"on_res_absorption", num(m.on_res_absorption)},
          {"slope", num(m.slope.slope)},
          {"slope_spacing", num(m.slope.spacing)},
          {"slope_resolution_warning", m.slope.resolution_warning}};
}

nlohmann::json to_json(const AgreementMetrics& m) {
  return {{"eps2", num(m.eps2)},
          {"eps_inf", num(m.eps_inf)},
          {"eps2_im", num(m.eps2_im)},
          {"eps2_re", num(m.eps2_re)},
          {"eps_inf_im", num(m.eps_inf_im)},
          {"eps_inf_re", num(m.eps_inf_re)},
          {"eps0_im", num(m.eps0_im)},
          {"eps0_slope", num(m.eps0_slope)},
          {"eps_width", opt(m.eps_width)},
          {"eps_contrast", opt(m.eps_contrast)}};
}

nlohmann::json to_json(const ModelParams& p) {
  return {{"n", p.n_atoms},
          {"omega_p", p.omega_p},
          {"omega_c", p.omega_c},
          {"delta1", p.delta1},
          {"delta2", p.delta2},
          {"gamma31", p.gamma31},
          {"gamma32", p.gamma32},
          {"gamma2", p.gamma2},
          {"gamma3", p.gamma3},
          {"gamma_phi", p.gamma_phi},
          {"dephasing", p.dephasing == DephasingModel::raman ? "raman" : "level"}};
}

}  // namespace dicke
