#include "dicke/superradiance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "dicke/csv.hpp"
#include "dicke/errors.hpp"
#include "dicke/liouvillian.hpp"
#include "dicke/meanfield.hpp"
#include "dicke/parallel.hpp"
#include "dicke/symspace.hpp"

namespace dicke {

std::string to_string(TraceMethod m) { return m == TraceMethod::exact ? "exact" : "meanfield"; }

std::string to_string(Channel c) {
  switch (c) {
    case Channel::i31: return "31";
    case Channel::i32: return "32";
    case Channel::tot: return "tot";
  }
  return "tot";
}

Channel parse_channel(const std::string& s) {
  if (s == "31" || s == "I31") return Channel::i31;
  if (s == "32" || s == "I32") return Channel::i32;
  if (s == "tot" || s == "Itot") return Channel::tot;
  throw InvalidParameter("unknown channel '" + s + "' (expected 31, 32 or tot)");
}

const std::vector<double>& BurstTrace::channel(Channel c) const {
  switch (c) {
    case Channel::i31: return i31;
    case Channel::i32: return i32;
    case Channel::tot: return itot;
  }
  return itot;
}

void BurstTrace::validate() const {
  const std::size_t n = t.size();
  if (i31.size() != n || i32.size() != n || itot.size() != n)
    throw InvalidData("burst trace: column sizes differ");
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(itot[k] - i31[k] - i32[k]) > 1e-10)
      throw InvalidData("burst trace: Itot != I31 + I32 at t = " + std::to_string(t[k]));
    if (i31[k] < -1e-9 || i32[k] < -1e-9)
      throw InvalidData("burst trace: negative intensity at t = " + std::to_string(t[k]));
  }
}

std::vector<double> sr_time_grid(double t_end, std::size_t points) {
  if (!(t_end > 0.0) || points < 2) throw InvalidParameter("time grid needs t_end > 0 and >= 2 points");
  std::vector<double> t(points);
  for (std::size_t k = 0; k < points; ++k)
    t[k] = t_end * static_cast<double>(k) / static_cast<double>(points - 1);
  return t;
}

namespace {

void check_transient(const ModelParams& p, double eps) {
  p.validate();
  if (p.omega_p != 0.0 || p.omega_c != 0.0)
    throw InvalidConfiguration("superradiant transients require Omega_p = Omega_c = 0");
  if (!(eps >= 0.0) || !(2.0 * eps * eps < 1.0))
    throw InvalidParameter("epsilon must satisfy 0 <= eps < 1/sqrt(2)");
}

BurstTrace empty_trace(TraceMethod m, const ModelParams& p, std::span<const double> t) {
  BurstTrace tr;
  tr.method = m;
  tr.n_atoms = p.n_atoms;
  tr.t.assign(t.begin(), t.end());
  tr.i31.resize(t.size());
  tr.i32.resize(t.size());
  tr.itot.resize(t.size());
  return tr;
}

}  // namespace

BurstTrace sr_transient_exact(const ModelParams& p, double eps, std::span<const double> t_grid,
                              const ode::Options& options) {
  check_transient(p, eps);
  const SymmetricBasis basis = SymmetricBasis::build(p.n_atoms);
  const LiouvillianOp L = build_liouvillian(p, basis);
  const double c3 = std::sqrt(1.0 - 2.0 * eps * eps);
  const DensityMatrix rho0 = DensityMatrix::pure(symmetric_product_state(basis, eps, eps, c3));

  const SparseOperator s1 = lowering_operator(basis, Branch::one);
  const SparseOperator s2 = lowering_operator(basis, Branch::two);
  const SparseOperator n31 = SparseOperator(s1.adjoint()) * s1;
  const SparseOperator n32 = SparseOperator(s2.adjoint()) * s2;

  BurstTrace tr = empty_trace(TraceMethod::exact, p, t_grid);
  const EvolveReport rep = evolve(
      L, rho0, t_grid,
      [&](std::size_t k, double, const ComplexVector& v) {
        tr.i31[k] = p.gamma31 * expectation(n31, v).real();
        tr.i32[k] = p.gamma32 * expectation(n32, v).real();
        tr.itot[k] = tr.i31[k] + tr.i32[k];
      },
      options);
  tr.max_trace_drift = rep.max_trace_drift;
  return tr;
}

BurstTrace sr_transient_mf(const ModelParams& p, double eps, std::span<const double> t_grid,
                           const ode::Options& options) {
  check_transient(p, eps);
  const double c3 = std::sqrt(1.0 - 2.0 * eps * eps);
  BurstTrace tr = empty_trace(TraceMethod::meanfield, p, t_grid);
  rep_evolve(
      RepState::pure(eps, eps, c3), p, t_grid,
      [&](std::size_t k, double, const RepMatrix& rho) {
        const ChannelIntensities c = mf_intensities(rho, p);
        tr.i31[k] = c.i31;
        tr.i32[k] = c.i32;
        tr.itot[k] = c.total();
        tr.max_trace_drift = std::max(tr.max_trace_drift, std::abs(rho.trace() - 1.0));
      },
      options);
  return tr;
}

Peak peak_extract(std::span<const double> t, std::span<const double> y) {
  if (t.empty() || t.size() != y.size()) throw InvalidData("peak_extract needs a nonempty trace");
  const auto it = std::max_element(y.begin(), y.end());
  Peak pk;
  pk.index = static_cast<std::size_t>(it - y.begin());
  pk.imax = *it;
  pk.t_peak = t[pk.index];
  if (pk.index == 0 || pk.index + 1 == y.size()) {
    pk.boundary = true;
    return pk;
  }
  const std::size_t k = pk.index;
  const double x0 = t[k - 1], x1 = t[k], x2 = t[k + 1];
  const double y0 = y[k - 1], y1 = y[k], y2 = y[k + 1];
  const double d1 = (y1 - y0) / (x1 - x0), d2 = (y2 - y1) / (x2 - x1);
  const double a = (d2 - d1) / (x2 - x0);
  if (a < 0.0) {
    const double b = d1 - a * (x0 + x1);
    const double xs = std::clamp(-b / (2.0 * a), x0, x2);
    pk.t_peak = xs;
    pk.imax = y0 + d1 * (xs - x0) + a * (xs - x0) * (xs - x1);
  }
  return pk;
}

Peak peak_extract(const BurstTrace& trace, Channel channel) {
  return peak_extract(trace.t, trace.channel(channel));
}

double half_max_width(std::span<const double> t, std::span<const double> y, const Peak& pk) {
  const double half = 0.5 * pk.imax;
  std::size_t a = pk.index;
  while (a > 0 && y[a] >= half) --a;
  if (y[a] >= half) throw InvalidData("no half-maximum crossing before the peak");
  std::size_t b = pk.index;
  while (b + 1 < y.size() && y[b] >= half) ++b;
  if (y[b] >= half) throw InvalidData("no half-maximum crossing after the peak");
  const double tl = t[a] + (half - y[a]) * (t[a + 1] - t[a]) / (y[a + 1] - y[a]);
  const double tr = t[b - 1] + (half - y[b - 1]) * (t[b] - t[b - 1]) / (y[b] - y[b - 1]);
  return tr - tl;
}

SechFit sech2_fit(std::span<const double> t, std::span<const double> y, double window_halfwidth,
                  const LmOptions& options) {
  if (!(window_halfwidth > 0.0)) throw InvalidParameter("fit window half-width must be positive");
  const Peak pk = peak_extract(t, y);
  SechFit guess;
  guess.imax = pk.imax;
  guess.t_d = pk.t_peak;
  if (pk.boundary) throw FitFailure("sech2 fit: peak on the trace boundary", guess);
  double fwhm;
  try {
    fwhm = half_max_width(t, y, pk);
  } catch (const InvalidData& e) {
    throw FitFailure(std::string("sech2 fit: ") + e.what(), guess);
  }
  guess.tau = fwhm / (2.0 * std::acosh(std::sqrt(2.0)));

  const double lo = pk.t_peak - window_halfwidth * guess.tau;
  const double hi = pk.t_peak + window_halfwidth * guess.tau;
  std::vector<double> wt, wy;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] >= lo && t[k] <= hi) {
      wt.push_back(t[k]);
      wy.push_back(y[k]);
    }
  }
  return fit_sech2(wt, wy, guess, options);
}

SechFit sech2_fit(const BurstTrace& trace, Channel channel, double window_halfwidth,
                  const LmOptions& options) {
  return sech2_fit(trace.t, trace.channel(channel), window_halfwidth, options);
}

ScalingFit power_law_fit(const std::vector<PeakPoint>& peaks) {
  std::set<int> distinct;
  std::vector<double> x, y;
  for (const auto& [n, ip] : peaks) {
    if (n < 1) throw InvalidData("power-law fit: N must be positive");
    if (!(ip > 0.0)) throw InvalidData("power-law fit: non-positive peak at N = " + std::to_string(n));
    distinct.insert(n);
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(ip));
  }
  if (distinct.size() < 4) throw InvalidData("power-law fit needs at least 4 distinct N");
  const LineFit f = ols(x, y);
  ScalingFit s;
  s.exponent_b = f.slope;
  s.log_prefactor = f.intercept;
  s.r_squared = f.r_squared;
  s.points = peaks;
  return s;
}

ApparentExponent apparent_exponent(const std::vector<PeakPoint>& peaks, double I0) {
  if (!(I0 > 0.0)) throw InvalidParameter("apparent exponent needs I0 > 0");
  if (peaks.empty()) throw InvalidData("apparent exponent needs at least one peak");
  ApparentExponent a;
  a.I0 = I0;
  double log_a = 0.0;
  for (const auto& [n, ip] : peaks) {
    if (n == 1) throw InvalidData("apparent exponent undefined at N = 1 (ln N = 0)");
    if (n < 1 || !(ip > 0.0)) throw InvalidData("apparent exponent needs N >= 2 and positive peaks");
    const double ln_n = std::log(static_cast<double>(n));
    const double ln_r = std::log(ip / I0);
    a.xi_per_n.emplace_back(n, ln_r / ln_n);
    a.correction_per_n.emplace_back(n, ln_r - 2.0 * ln_n);
    log_a += ln_r - 2.0 * ln_n;
  }
  a.A = std::exp(log_a / static_cast<double>(peaks.size()));
  return a;
}

std::vector<SweepPoint> sr_sweep(const ModelParams& base, double eps, const std::vector<int>& n_list,
                                 std::span<const double> t_grid, const SweepOptions& options) {
  std::vector<SweepPoint> out(n_list.size());
  parallel_for(n_list.size(), options.workers, [&](std::size_t i) {
    ModelParams p = base;
    p.n_atoms = n_list[i];
    SweepPoint& pt = out[i];
    pt.n_atoms = p.n_atoms;
    try {
      const BurstTrace tr = options.method == TraceMethod::exact
                                ? sr_transient_exact(p, eps, t_grid, options.ode)
                                : sr_transient_mf(p, eps, t_grid, options.ode);
      pt.peak = peak_extract(tr, options.channel);
      pt.peak31 = peak_extract(tr, Channel::i31);
      pt.peak32 = peak_extract(tr, Channel::i32);
    } catch (const Error& e) {
      if (!options.keep_going) throw;
      pt.error = e.what();
    }
  });
  return out;
}

double single_emitter_peak(const ModelParams& base, double eps, std::span<const double> t_grid,
                           Channel channel) {
  ModelParams p = base;
  p.n_atoms = 1;
  return peak_extract(sr_transient_exact(p, eps, t_grid), channel).imax;
}

void write_trace_csv(std::ostream& out, const BurstTrace& trace, bool timestamp) {
  csv::Writer w(out, {"t", "I31", "I32", "Itot"}, timestamp);
  for (std::size_t k = 0; k < trace.t.size(); ++k)
    w.row({trace.t[k], trace.i31[k], trace.i32[k], trace.itot[k]});
}

namespace {
nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
}  // namespace

nlohmann::json to_json(const SechFit& f) {
  return {{"Imax", num(f.imax)},       {"t_d", num(f.t_d)},           {"tau", num(f.tau)},
          {"rms_residual", num(f.rms_residual)}, {"iterations", f.iterations}, {"points", f.points}};
}

nlohmann::json to_json(const Peak& p) {
  return {{"Imax", num(p.imax)}, {"t_peak", num(p.t_peak)}, {"boundary", p.boundary}};
}

nlohmann::json to_json(const ScalingFit& f) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [n, ip] : f.points) pts.push_back({{"N", n}, {"I_peak", num(ip)}});
  return {{"exponent_b", num(f.exponent_b)},
          {"log_prefactor", num(f.log_prefactor)},
          {"r_squared", num(f.r_squared)},
          {"points", pts}};
}

nlohmann::json to_json(const ApparentExponent& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.xi_per_n.size(); ++i)
    rows.push_back({{"N", a.xi_per_n[i].first},
                    {"xi", num(a.xi_per_n[i].second)},
                    {"xi_minus_2_times_lnN", num(a.correction_per_n[i].second)}});
  return {{"A", num(a.A)}, {"ln_A", num(std::log(a.A))}, {"I0", num(a.I0)}, {"xi_per_N", rows}};
}

}  // namespace dicke
