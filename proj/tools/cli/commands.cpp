#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include <dicke/csv.hpp>
#include <dicke/errors.hpp>
#include <dicke/fitting.hpp>
#include <dicke/parallel.hpp>
#include <dicke/spectroscopy.hpp>
#include <dicke/superradiance.hpp>

#include "../validation/acceptance.hpp"

namespace dicke::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void ModelOverrides::apply(ModelParams& p) const {
  if (n) p.n_atoms = *n;
  if (omega_p) p.omega_p = *omega_p;
  if (omega_c) p.omega_c = *omega_c;
  if (delta1) p.delta1 = *delta1;
  if (delta2) p.delta2 = *delta2;
  if (gamma31) p.gamma31 = *gamma31;
  if (gamma32) p.gamma32 = *gamma32;
  if (gamma2) p.gamma2 = *gamma2;
  if (gamma3) p.gamma3 = *gamma3;
  if (gamma_phi) p.gamma_phi = *gamma_phi;
  if (dephasing) p.dephasing = *dephasing == "level" ? DephasingModel::level : DephasingModel::raman;
}

namespace {

void add_model_options(CLI::App* app, ModelOverrides& m, bool drives) {
  app->add_option("--n", m.n, "number of atoms N")->check(CLI::Range(1, kDefaultMaxAtoms));
  if (drives) {
    app->add_option("--omega-p", m.omega_p, "probe Rabi frequency (units of Gamma)");
    app->add_option("--omega-c", m.omega_c, "control Rabi frequency");
    app->add_option("--delta2", m.delta2, "control detuning");
  } else {
    app->add_option("--delta1", m.delta1, "rotating-frame offset of |3> (drives off)");
    app->add_option("--delta2", m.delta2, "Delta1 - Delta2 is the offset of |2>");
  }
  app->add_option("--gamma31", m.gamma31, "decay rate 3->1");
  app->add_option("--gamma32", m.gamma32, "decay rate 3->2");
  app->add_option("--gamma2", m.gamma2, "ground-coherence dephasing");
  app->add_option("--gamma3", m.gamma3, "excited-state dephasing");
  app->add_option("--gamma-phi", m.gamma_phi, "Raman dephasing rate (raman model)");
  app->add_option("--dephasing", m.dephasing, "exact-solver dephasing operators")
      ->check(CLI::IsMember({"raman", "level"}));
}

struct MediumOverrides {
  std::string preset = "strong";
  std::optional<double> n_at, mu31, lambda_p, length, rate_unit;
};

std::vector<int> int_range(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

std::vector<int> log_spaced_n(int n_max, int points) {
  std::vector<int> out{1};
  for (int k = 0; k < points; ++k) {
    const double x = std::log(static_cast<double>(n_max)) * k / std::max(points - 1, 1);
    const int n = static_cast<int>(std::lround(std::exp(x)));
    if (n > out.back()) out.push_back(n);
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidConfiguration(what);
}

json medium_json(const MediumParams& m) {
  json j = {{"n_at", m.n_at}, {"mu31", m.mu31}, {"omega_p", m.omega_p}, {"rate_unit", m.rate_unit}};
  j["length"] = m.length ? json(*m.length) : json(nullptr);
  return j;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_json(const fs::path& path, const json& j) {
  std::ofstream f = csv::open_output(path);
  f << std::setw(2) << j << '\n';
}

}  // namespace

ParseResult parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collective superradiance and EIT in the Dicke limit", "dicke"};
  app.set_config("--config", "", "INI configuration file ([section] per command, key = value)");
  app.fallthrough();
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::optional<std::string> out_dir;
  bool no_timestamp = false;
  app.add_option("--out", out_dir, "output directory (default $DICKE_OUTPUT_ROOT/<command>)");
  app.add_option("--workers", cfg.workers, "parallel jobs (0 = hardware threads)");
  app.add_flag("--no-timestamp", no_timestamp, "omit the '# generated' line in CSV output");

  ModelOverrides eit_m, burst_m, scaling_m, vg_m;
  MediumOverrides med;

  auto* eit = app.add_subcommand("eit-scan", "exact vs mean-field probe susceptibility scan");
  add_model_options(eit, eit_m, true);
  eit->add_option("--exact-range", cfg.exact_range, "exact grid lo hi")->expected(2);
  eit->add_option("--exact-points", cfg.exact_points, "exact grid points")->check(CLI::PositiveNumber);
  eit->add_option("--mf-range", cfg.mf_range, "mean-field grid lo hi")->expected(2);
  eit->add_option("--mf-points", cfg.mf_points, "mean-field grid points")->check(CLI::PositiveNumber);
  eit->add_option("--mf-mode", cfg.mf_mode, "ode (representative atom) or analytic")
      ->check(CLI::IsMember({"ode", "analytic"}));
  eit->add_flag("--n-scaled", cfg.n_scaled, "multiply chi by N");

  auto* burst = app.add_subcommand("sr-burst", "drive-off superradiant burst, both solvers");
  add_model_options(burst, burst_m, false);
  auto add_sr = [&cfg](CLI::App* a) {
    a->add_flag("--symmetric", cfg.symmetric, "Gamma31 = Gamma32 (default Gamma31 = 5 Gamma32)");
    a->add_option("--epsilon", cfg.epsilon, "ground amplitudes of the initial product state");
    a->add_option("--t-end", cfg.t_end, "trace length (1/Gamma)");
    a->add_option("--t-points", cfg.t_points, "trace samples");
    a->add_option("--channel", cfg.channel, "31, 32 or tot")->check(CLI::IsMember({"31", "32", "tot"}));
  };
  add_sr(burst);
  burst->add_option("--fit-window", cfg.fit_window, "sech^2 fit half-window in tau estimates");

  auto* scaling = app.add_subcommand("sr-scaling", "peak intensity vs N, power law and apparent exponent");
  add_model_options(scaling, scaling_m, false);
  add_sr(scaling);
  scaling->add_option("--n-list", cfg.n_list, "atom numbers (default 4..30)");
  scaling->add_option("--method", cfg.method, "exact, meanfield or both")
      ->check(CLI::IsMember({"exact", "meanfield", "both"}));
  scaling->add_option("--planted", cfg.planted, "synthetic peaks I0 N^2 A, e.g. A=0.5");
  scaling->add_option("--i0", cfg.i0, "single-emitter scale (default: N=1 peak)");

  auto* vg = app.add_subcommand("vg-scan", "group velocity ratio vg(N)/vg(1)");
  add_model_options(vg, vg_m, true);
  vg->add_option("--medium", med.preset, "strong (slow-light regime) or sodium")
      ->check(CLI::IsMember({"strong", "sodium"}));
  vg->add_option("--n-at", med.n_at, "atom density, m^-3");
  vg->add_option("--mu31", med.mu31, "dipole moment, C m");
  vg->add_option("--lambda-p", med.lambda_p, "probe wavelength, m");
  vg->add_option("--length", med.length, "medium length, m (reports the pulse delay)");
  vg->add_option("--rate-unit", med.rate_unit, "rad/s per model rate unit");
  vg->add_option("--n-max", cfg.n_max, "largest N")->check(CLI::Range(2, 100000000));
  vg->add_option("--points", cfg.vg_points, "log-spaced N values")->check(CLI::Range(2, 100000));

  auto* val = app.add_subcommand("validate", "run acceptance criteria AC1-AC10, write report.json");
  val->add_flag("--quick", cfg.quick, "only N <= 8 work");
  val->add_option("--only", cfg.only, "criterion ids to run")->check(CLI::Range(1, validation::kCriteriaCount));

  auto* sodium = app.add_subcommand("sodium-demo", "sodium D2 operating point report");
  std::optional<int> sodium_n;
  sodium->add_option("--n", sodium_n, "atom number (default 300)")->check(CLI::PositiveNumber);
  sodium->add_option("--vg1", cfg.vg1, "single-emitter group velocity, m/s");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kOk : kConfigError};
  }

  cfg.timestamp = !no_timestamp;
  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();

  if (cfg.command == "eit-scan") {
    cfg.params = eit_reference_params();
    eit_m.apply(cfg.params);
  } else if (cfg.command == "sr-burst" || cfg.command == "sr-scaling") {
    cfg.params = superradiance_params(cfg.symmetric);
    (cfg.command == "sr-burst" ? burst_m : scaling_m).apply(cfg.params);
    if (cfg.n_list.empty()) cfg.n_list = int_range(4, 30);
  } else if (cfg.command == "vg-scan") {
    MediumParams m = med.preset == "sodium" ? sodium_medium() : strong_slow_light_medium();
    cfg.params = med.preset == "sodium" ? sodium_params(1) : strong_slow_light_params(1);
    vg_m.apply(cfg.params);
    if (med.n_at) m.n_at = *med.n_at;
    if (med.mu31) m.mu31 = *med.mu31;
    if (med.lambda_p) m.omega_p = 2.0 * constants::pi * constants::c / *med.lambda_p;
    if (med.length) m.length = *med.length;
    if (med.rate_unit) m.rate_unit = *med.rate_unit;
    cfg.medium = m;
  } else if (cfg.command == "sodium-demo") {
    cfg.params = sodium_params(sodium_n.value_or(300));
  }

  const char* root = std::getenv(kOutputRootEnv);
  cfg.out_dir = out_dir ? fs::path(*out_dir) : fs::path(root && *root ? root : ".") / cfg.command;
  return {cfg, kOk};
}

// ---------------------------------------------------------------------------

namespace {

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw InvalidConfiguration("cannot create output directory " + dir.string() + ": " + ec.message());
}

int run_eit_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require(c.exact_range[0] < c.exact_range[1] && c.mf_range[0] < c.mf_range[1],
          "grid ranges must satisfy lo < hi");
  require(c.exact_points >= 3 && c.mf_points >= 3, "grids need at least 3 points");
  c.params.validate();
  prepare_out_dir(c.out_dir);

  ScanOptions so;
  so.workers = c.workers;
  so.keep_going = true;
  so.n_scaled = c.n_scaled;
  const MfMode mode = c.mf_mode == "analytic" ? MfMode::analytic : MfMode::ode;
  const auto exact_grid = uniform_grid(c.exact_range[0], c.exact_range[1], c.exact_points);
  const auto mf_grid = uniform_grid(c.mf_range[0], c.mf_range[1], c.mf_points);

  err << "eit-scan: exact N=" << c.params.n_atoms << ", " << exact_grid.size() << " points\n";
  const SpectrumScan exact = scan_exact(c.params, exact_grid, so);
  const SpectrumScan mf = scan_mf(c.params, mf_grid, mode, so);
  const SpectrumScan mf_common = scan_mf(c.params, exact_grid, mode, so);

  {
    std::ofstream f = csv::open_output(c.out_dir / "exact.csv");
    write_scan_csv(f, exact, c.timestamp);
  }
  {
    std::ofstream f = csv::open_output(c.out_dir / "mf.csv");
    write_scan_csv(f, mf, c.timestamp);
  }

  json failures = json::array();
  for (const auto* s : {&exact, &mf, &mf_common})
    for (const auto& f : s->failures)
      failures.push_back({{"scan", to_string(s->method)}, {"index", f.index}, {"delta1", f.delta1},
                          {"message", f.message}});

  json j;
  j["params"] = to_json(c.params);
  j["mf_mode"] = c.mf_mode;
  j["n_scaled"] = c.n_scaled;
  j["failures"] = failures;
  if (failures.empty()) {
    j["exact"] = to_json(eit_metrics(exact));
    j["mf"] = to_json(eit_metrics(mf_common));
    j["agreement"] = to_json(agreement(exact, mf_common));
  } else {
    j["exact"] = j["mf"] = j["agreement"] = nullptr;
  }
  write_json(c.out_dir / "metrics.json", j);

  if (!failures.empty()) {
    err << "eit-scan: " << failures.size() << " grid point(s) failed; see metrics.json\n";
    return kSolverFailure;
  }
  out << "eps2 = " << j["agreement"]["eps2"] << ", eps_inf = " << j["agreement"]["eps_inf"] << '\n';
  out << "exact width = " << j["exact"]["width"] << ", mean-field width = " << j["mf"]["width"] << '\n';
  out << "wrote " << (c.out_dir / "exact.csv").string() << ", mf.csv, metrics.json\n";
  return kOk;
}

json fit_report(const BurstTrace& tr, Channel ch, double window) {
  json j;
  j["peak_I31"] = to_json(peak_extract(tr, Channel::i31));
  j["peak_I32"] = to_json(peak_extract(tr, Channel::i32));
  j["peak_Itot"] = to_json(peak_extract(tr, Channel::tot));
  j["max_trace_drift"] = num(tr.max_trace_drift);
  try {
    j["fit"] = to_json(sech2_fit(tr, ch, window));
    j["fit"]["status"] = "ok";
  } catch (const FitFailure& e) {
    j["fit"] = to_json(e.last());
    j["fit"]["status"] = "fit-failure";
    j["fit"]["message"] = e.what();
  }
  return j;
}

int run_sr_burst(const RunConfig& c, std::ostream& out, std::ostream& err) {
  c.params.validate();
  prepare_out_dir(c.out_dir);
  const auto tg = sr_time_grid(c.t_end, c.t_points);
  const Channel ch = parse_channel(c.channel);

  err << "sr-burst: N=" << c.params.n_atoms << (c.symmetric ? " symmetric" : " asymmetric") << '\n';
  const BurstTrace ex = sr_transient_exact(c.params, c.epsilon, tg);
  const BurstTrace mf = sr_transient_mf(c.params, c.epsilon, tg);
  {
    std::ofstream f = csv::open_output(c.out_dir / "exact_trace.csv");
    write_trace_csv(f, ex, c.timestamp);
  }
  {
    std::ofstream f = csv::open_output(c.out_dir / "mf_trace.csv");
    write_trace_csv(f, mf, c.timestamp);
  }

  json j;
  j["params"] = to_json(c.params);
  j["epsilon"] = c.epsilon;
  j["channel"] = to_string(ch);
  j["window_halfwidth"] = c.fit_window;
  j["exact"] = fit_report(ex, ch, c.fit_window);
  j["meanfield"] = fit_report(mf, ch, c.fit_window);
  write_json(c.out_dir / "sech_fit.json", j);

  for (const char* m : {"exact", "meanfield"}) {
    const json& r = j[m];
    out << m << ": Imax = " << r["peak_Itot"]["Imax"] << " at t = " << r["peak_Itot"]["t_peak"]
        << ", sech^2 fit " << r["fit"]["status"].get<std::string>();
    if (r["fit"]["status"] == "ok") out << " (tau = " << r["fit"]["tau"] << ", rms = " << r["fit"]["rms_residual"] << ")";
    out << '\n';
  }
  return kOk;
}

double parse_planted(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || s.substr(0, eq) != "A")
    throw InvalidConfiguration("--planted expects A=<value>, got '" + s + "'");
  try {
    std::size_t used = 0;
    const double a = std::stod(s.substr(eq + 1), &used);
    if (used != s.size() - eq - 1 || !(a > 0.0)) throw std::invalid_argument(s);
    return a;
  } catch (const std::exception&) {
    throw InvalidConfiguration("--planted value must be a positive number: '" + s + "'");
  }
}

int run_sr_scaling(const RunConfig& c, std::ostream& out, std::ostream& err) {
  c.params.validate();
  require(c.n_list.size() >= 4, "sr-scaling needs at least 4 atom numbers");
  for (int n : c.n_list) require(n >= 2 && n <= kDefaultMaxAtoms, "--n-list entries must be in [2, 60]");
  if (c.i0) require(*c.i0 > 0.0, "--i0 must be positive");
  prepare_out_dir(c.out_dir);
  const Channel ch = parse_channel(c.channel);
  json j;
  j["params"] = to_json(c.params);
  j["epsilon"] = c.epsilon;
  j["channel"] = to_string(ch);

  if (c.planted) {
    const double A = parse_planted(*c.planted);
    const double I0 = c.i0.value_or(1.0);
    std::vector<PeakPoint> peaks;
    std::ofstream f = csv::open_output(c.out_dir / "peaks.csv");
    csv::Writer w(f, {"N", "I_peak"}, c.timestamp);
    for (int n : c.n_list) {
      peaks.emplace_back(n, I0 * n * n * A);
      w.row({static_cast<double>(n), peaks.back().second});
    }
    j["mode"] = "planted";
    j["planted_A"] = A;
    j["fit"] = to_json(power_law_fit(peaks));
    j["apparent_exponent"] = to_json(apparent_exponent(peaks, I0));
    write_json(c.out_dir / "scaling.json", j);
    out << "planted A = " << A << ": b = " << j["fit"]["exponent_b"] << '\n';
    return kOk;
  }

  const auto tg = sr_time_grid(c.t_end, c.t_points);
  SweepOptions so;
  so.channel = ch;
  so.workers = c.workers;
  so.keep_going = true;
  std::vector<SweepPoint> ex, mf;
  if (c.method != "meanfield") {
    err << "sr-scaling: exact sweep over " << c.n_list.size() << " N values\n";
    so.method = TraceMethod::exact;
    ex = sr_sweep(c.params, c.epsilon, c.n_list, tg, so);
  }
  if (c.method != "exact") {
    err << "sr-scaling: mean-field sweep\n";
    so.method = TraceMethod::meanfield;
    mf = sr_sweep(c.params, c.epsilon, c.n_list, tg, so);
  }

  const double nan = std::nan("");
  std::vector<std::string> header{"N"};
  if (!ex.empty()) header.insert(header.end(), {"I_peak", "t_peak", "I31_peak", "I32_peak", "boundary"});
  if (!mf.empty()) header.insert(header.end(), {"I_peak_mf", "t_peak_mf", "boundary_mf"});
  if (!ex.empty() && !mf.empty()) header.push_back("mf_rel_deviation");
  std::ofstream f = csv::open_output(c.out_dir / "peaks.csv");
  csv::Writer w(f, header, c.timestamp);
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    std::vector<double> row{static_cast<double>(c.n_list[i])};
    if (!ex.empty()) {
      const SweepPoint& s = ex[i];
      row.insert(row.end(), {s.ok() ? s.peak.imax : nan, s.ok() ? s.peak.t_peak : nan,
                             s.ok() ? s.peak31.imax : nan, s.ok() ? s.peak32.imax : nan,
                             s.ok() ? static_cast<double>(s.peak.boundary) : nan});
    }
    if (!mf.empty()) {
      const SweepPoint& s = mf[i];
      row.insert(row.end(), {s.ok() ? s.peak.imax : nan, s.ok() ? s.peak.t_peak : nan,
                             s.ok() ? static_cast<double>(s.peak.boundary) : nan});
    }
    if (!ex.empty() && !mf.empty())
      row.push_back(ex[i].ok() && mf[i].ok() ? std::abs(mf[i].peak.imax - ex[i].peak.imax) / ex[i].peak.imax : nan);
    w.row(row);
  }

  int code = kOk;
  auto analyse = [&](const std::vector<SweepPoint>& s, const char* key) {
    if (s.empty()) return;
    json r;
    json failures = json::array();
    std::vector<PeakPoint> peaks;
    for (const auto& p : s) {
      if (p.ok()) peaks.emplace_back(p.n_atoms, p.peak.imax);
      else failures.push_back({{"N", p.n_atoms}, {"message", p.error}});
    }
    r["failures"] = failures;
    if (peaks.size() < 4) {
      r["fit"] = nullptr;
      r["error"] = "fewer than 4 successful N values";
      code = kSolverFailure;
    } else {
      r["fit"] = to_json(power_law_fit(peaks));
      const double I0 = c.i0 ? *c.i0 : single_emitter_peak(c.params, c.epsilon, tg, ch);
      r["apparent_exponent"] = to_json(apparent_exponent(peaks, I0));
      out << key << ": b = " << r["fit"]["exponent_b"] << ", A = " << r["apparent_exponent"]["A"] << '\n';
    }
    if (!failures.empty()) err << "sr-scaling: " << failures.size() << " " << key << " job(s) failed\n";
    j[key] = r;
  };
  j["mode"] = "simulated";
  analyse(ex, "exact");
  analyse(mf, "meanfield");
  write_json(c.out_dir / "scaling.json", j);
  return code;
}

int run_vg_scan(const RunConfig& c, std::ostream& out, std::ostream&) {
  const MediumParams& m = *c.medium;
  m.validate();
  c.params.validate();
  prepare_out_dir(c.out_dir);
  const auto ns = log_spaced_n(c.n_max, c.vg_points);
  const auto rows = vg_ratio_scan(c.params, m, ns);
  {
    std::ofstream f = csv::open_output(c.out_dir / "vg.csv");
    csv::Writer w(f, {"N", "delta", "vg_over_c", "ratio"}, c.timestamp);
    for (const auto& r : rows) w.row({static_cast<double>(r.n), r.delta, r.vg_over_c, r.ratio});
  }

  json j;
  j["params"] = to_json(c.params);
  j["medium"] = medium_json(m);
  json superluminal = json::array();
  for (const auto& r : rows)
    if (r.superluminal) superluminal.push_back(r.n);
  j["superluminal_N"] = superluminal;

  // log-log slope of the ratio over the top decade
  std::vector<double> x, y;
  for (const auto& r : rows)
    if (r.n * 10 >= c.n_max && std::isfinite(r.ratio) && r.ratio > 0.0) {
      x.push_back(std::log(static_cast<double>(r.n)));
      y.push_back(std::log(r.ratio));
    }
  j["top_decade_loglog_slope"] = x.size() >= 2 ? num(ols(x, y).slope) : json(nullptr);

  ModelParams pmax = c.params;
  pmax.n_atoms = c.n_max;
  try {
    j["K"] = asymptotic_K(c.params, m);
    j["asymptotic_vg_over_c_at_n_max"] = asymptotic_vg_over_c(pmax, m);
  } catch (const InvalidParameter& e) {
    j["K"] = nullptr;
    j["asymptote_error"] = e.what();
  }
  j["vg_over_c_at_n_max"] = num(rows.back().vg_over_c);
  if (m.length) {
    try {
      j["pulse_delay_at_n_max_s"] = pulse_delay(group_result(pmax, m), m);
    } catch (const SuperluminalRegime& e) {
      j["pulse_delay_at_n_max_s"] = nullptr;
    }
  }
  write_json(c.out_dir / "vg_report.json", j);

  out << "K = " << j["K"] << ", top-decade slope = " << j["top_decade_loglog_slope"] << '\n';
  if (!superluminal.empty()) out << superluminal.size() << " superluminal row(s) flagged\n";
  return kOk;
}

int run_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  prepare_out_dir(c.out_dir);
  validation::SuiteOptions o;
  o.quick = c.quick;
  o.workers = c.workers;
  o.log = [&err](const std::string& s) { err << s << '\n'; };
  o.on_result = [&out](const validation::Criterion& cr) { out << cr.summary_line() << std::endl; };
  const validation::ValidationReport r = validation::run_suite(o, c.only);
  write_json(c.out_dir / "report.json", to_json(r));
  out << "overall: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return r.passed() ? kOk : kValidationFailure;
}

int run_sodium_demo(const RunConfig& c, std::ostream& out, std::ostream&) {
  const SodiumReport r = sodium_demo(c.params.n_atoms, c.vg1);
  std::ostringstream s;
  s << std::setprecision(6);
  s << "sodium D2, N = " << r.n_atoms << '\n'
    << "  Gamma_eff / 2pi               = " << r.gamma_eff_hz / 1e9 << " GHz\n"
    << "  Omega_c^2 / (4 gamma2) / 2pi  = " << r.bound_hz / 1e9 << " GHz\n"
    << "  Omega_c^2 / (2 gamma2) / 2pi  = " << r.bound_2g2_hz / 1e9 << " GHz\n"
    << "  Gamma_eff <= Omega_c^2/(4 gamma2): " << (r.consistent ? "yes" : "no") << '\n'
    << "  v_g(1) = " << r.vg1 << " m/s, v_g(N) = N^2 v_g(1) = " << r.vg << " m/s = " << r.vg_over_c
    << " c\n";
  out << s.str();
  return kOk;
}

}  // namespace

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "eit-scan") return run_eit_scan(c, out, err);
  if (c.command == "sr-burst") return run_sr_burst(c, out, err);
  if (c.command == "sr-scaling") return run_sr_scaling(c, out, err);
  if (c.command == "vg-scan") return run_vg_scan(c, out, err);
  if (c.command == "validate") return run_validate(c, out, err);
  if (c.command == "sodium-demo") return run_sodium_demo(c, out, err);
  throw InvalidConfiguration("unknown command '" + c.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    ParseResult p = parse(argc, argv, out, err);
    if (!p.config) return p.exit_code;
    return execute(*p.config, out, err);
  } catch (const InvalidParameter& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidConfiguration& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const MissingLength& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace dicke::cli
