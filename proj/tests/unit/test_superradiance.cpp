#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <dicke/errors.hpp>
#include <dicke/liouvillian.hpp>
#include <dicke/superradiance.hpp>

using namespace dicke;

namespace {

ModelParams sr(int n, bool symmetric = false) {
  ModelParams p = superradiance_params(symmetric);
  p.n_atoms = n;
  return p;
}

std::vector<double> sech2_samples(const std::vector<double>& t, double imax, double td, double tau) {
  std::vector<double> y;
  for (double x : t) y.push_back(imax / std::pow(std::cosh((x - td) / tau), 2));
  return y;
}

const BurstTrace& asymmetric30() {
  static const BurstTrace trace = sr_transient_exact(sr(30), 0.1, sr_time_grid());
  return trace;
}

}  // namespace

TEST(Channel, Parsing) {
  EXPECT_EQ(parse_channel("31"), Channel::i31);
  EXPECT_EQ(parse_channel("I32"), Channel::i32);
  EXPECT_EQ(parse_channel("tot"), Channel::tot);
  EXPECT_EQ(parse_channel("Itot"), Channel::tot);
  EXPECT_THROW(parse_channel("33"), InvalidParameter);
  EXPECT_EQ(to_string(Channel::i31), "31");
  EXPECT_EQ(to_string(TraceMethod::meanfield), "meanfield");
}

TEST(TimeGrid, Uniform) {
  const auto t = sr_time_grid();
  ASSERT_EQ(t.size(), 2001u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 0.5);
  EXPECT_THROW(sr_time_grid(0.0, 10), InvalidParameter);
}

TEST(Trace, Invariants) {
  BurstTrace b;
  b.t = {0.0, 1.0};
  b.i31 = {1.0, 0.5};
  b.i32 = {0.5, 0.25};
  b.itot = {1.5, 0.75};
  EXPECT_NO_THROW(b.validate());
  b.itot[1] = 0.8;
  EXPECT_THROW(b.validate(), InvalidData);
  b.itot[1] = 0.75;
  b.i32[1] = -1e-6;
  b.itot[1] = b.i31[1] + b.i32[1];
  EXPECT_THROW(b.validate(), InvalidData);
  b.i32.pop_back();
  EXPECT_THROW(b.validate(), InvalidData);
}

TEST(Transient, RejectsDrivesAndBadEpsilon) {
  const auto t = sr_time_grid(0.1, 11);
  ModelParams driven = sr(2);
  driven.omega_c = 0.1;
  EXPECT_THROW(sr_transient_exact(driven, 0.1, t), InvalidConfiguration);
  EXPECT_THROW(sr_transient_mf(driven, 0.1, t), InvalidConfiguration);
  EXPECT_THROW(sr_transient_exact(sr(2), 0.71, t), InvalidParameter);
  EXPECT_THROW(sr_transient_mf(sr(2), -0.1, t), InvalidParameter);
}

TEST(Transient, SingleAtomBranchingDecay) {
  const auto t = sr_time_grid(2.0, 201);
  ModelParams p = sr(1);
  for (const auto& trace : {sr_transient_exact(p, 0.0, t), sr_transient_mf(p, 0.0, t)}) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double pop = std::exp(-(p.gamma31 + p.gamma32) * t[k]);
      EXPECT_NEAR(trace.i31[k], p.gamma31 * pop, 1e-7);
      EXPECT_NEAR(trace.i32[k], p.gamma32 * pop, 1e-7);
    }
    EXPECT_TRUE(peak_extract(trace, Channel::tot).boundary);
  }
}

TEST(Transient, MeanFieldExactAtOneAtom) {
  const auto t = sr_time_grid(1.0, 101);
  for (bool sym : {true, false}) {
    const auto e = sr_transient_exact(sr(1, sym), 0.1, t);
    const auto m = sr_transient_mf(sr(1, sym), 0.1, t);
    for (std::size_t k = 0; k < t.size(); ++k) {
      EXPECT_NEAR(e.i31[k], m.i31[k], 1e-9);
      EXPECT_NEAR(e.i32[k], m.i32[k], 1e-9);
    }
  }
}

TEST(Transient, ExcitationBookkeeping) {
  const int n = 6;
  const ModelParams p = sr(n);
  const auto b = SymmetricBasis::build(n);
  const auto t = sr_time_grid(0.3, 3001);
  const auto L = build_liouvillian(p, b);
  const auto psi = symmetric_product_state(b, 0.1, 0.1, std::sqrt(0.98));
  const SparseOperator ne = number_operators(b).ne;
  std::vector<double> pop(t.size());
  const auto report = evolve(L, DensityMatrix::pure(psi), t, [&](std::size_t k, double, const ComplexVector& v) {
    pop[k] = expectation(ne, v).real();
  });
  EXPECT_LT(report.max_trace_drift, 1e-8);
  const auto trace = sr_transient_exact(p, 0.1, t);
  double worst = 0.0;
  const double h = t[1] - t[0];
  for (std::size_t k = 2; k + 2 < t.size(); ++k) {
    const double dndt = (pop[k - 2] - 8 * pop[k - 1] + 8 * pop[k + 1] - pop[k + 2]) / (12 * h);
    worst = std::max(worst, std::abs(dndt + trace.itot[k]));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Transient, IntensitiesNonNegative) {
  for (bool sym : {true, false}) {
    for (int n : {2, 7, 12}) {
      for (const auto& trace : {sr_transient_exact(sr(n, sym), 0.1, sr_time_grid(0.5, 201)),
                                sr_transient_mf(sr(n, sym), 0.1, sr_time_grid(0.5, 201))}) {
        EXPECT_NO_THROW(trace.validate());
        for (double v : trace.i31) EXPECT_GE(v, -1e-9);
        for (double v : trace.i32) EXPECT_GE(v, -1e-9);
      }
    }
  }
}

TEST(Transient, AsymmetricBurstAtThirtyAtoms) {
  const auto& trace = asymmetric30();
  EXPECT_LT(trace.max_trace_drift, 1e-8);
  const Peak tot = peak_extract(trace, Channel::tot);
  EXPECT_FALSE(tot.boundary);
  EXPECT_NEAR(tot.t_peak, 0.03, 0.015);
  EXPECT_GT(peak_extract(trace, Channel::i31).imax, 4.0 * peak_extract(trace, Channel::i32).imax);
  const SechFit fit = sech2_fit(trace, Channel::tot);
  EXPECT_LT(fit.rms_residual, 0.1);
  EXPECT_GT(fit.tau, 0.0);
}

TEST(Transient, MeanFieldWithoutCoherenceDecaysMonotonically) {
  const auto trace = sr_transient_mf(sr(30), 0.0, sr_time_grid(0.5, 101));
  for (std::size_t k = 1; k < trace.t.size(); ++k) EXPECT_LT(trace.itot[k], trace.itot[k - 1]);
  EXPECT_NEAR(trace.itot[0], 30.0 * 6.0, 1e-12);
}

TEST(Peak, RecoversPlantedSech) {
  const auto t = sr_time_grid(1.0, 1001);
  const auto y = sech2_samples(t, 2.5, 0.4123, 0.07);
  const Peak p = peak_extract(t, y);
  EXPECT_FALSE(p.boundary);
  EXPECT_NEAR(p.imax / 2.5, 1.0, 1e-4);
  EXPECT_NEAR(p.t_peak / 0.4123, 1.0, 1e-4);
  const double fwhm = half_max_width(t, y, p);
  EXPECT_NEAR(fwhm, 2 * std::acosh(std::sqrt(2.0)) * 0.07, 1e-4);
}

TEST(Peak, BoundaryAndMissingCrossings) {
  const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{4.0, 3.0, 2.5, 2.2};
  const Peak p = peak_extract(t, y);
  EXPECT_TRUE(p.boundary);
  EXPECT_EQ(p.index, 0u);
  EXPECT_EQ(p.imax, 4.0);
  EXPECT_THROW(half_max_width(t, y, p), InvalidData);
}

TEST(SechFit, PlantedEnvelope) {
  const auto t = sr_time_grid(2.0, 401);
  const auto y = sech2_samples(t, 3.7, 0.8, 0.15);
  const SechFit f = sech2_fit(t, y);
  EXPECT_NEAR(f.imax / 3.7, 1.0, 1e-6);
  EXPECT_NEAR(f.t_d / 0.8, 1.0, 1e-6);
  EXPECT_NEAR(f.tau / 0.15, 1.0, 1e-6);
  EXPECT_GE(f.rms_residual, 0.0);
  EXPECT_LT(f.rms_residual, 1e-8);
}

TEST(SechFit, Failures) {
  const auto t = sr_time_grid(2.0, 401);
  const auto y = sech2_samples(t, 3.7, 0.8, 0.15);
  EXPECT_THROW(sech2_fit(t, y, 1e-4), FitFailure);
  const auto decay = sr_transient_exact(sr(1), 0.0, sr_time_grid(1.0, 51));
  EXPECT_THROW(sech2_fit(decay, Channel::tot), FitFailure);
}

TEST(PowerLaw, ExactSquareFamily) {
  std::vector<PeakPoint> pts;
  for (int n = 2; n <= 40; n += 3) pts.push_back({n, 3.0 * n * n});
  const auto f = power_law_fit(pts);
  EXPECT_NEAR(f.exponent_b, 2.0, 1e-12);
  EXPECT_NEAR(f.log_prefactor, std::log(3.0), 1e-11);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);

  EXPECT_THROW(power_law_fit({{2, 1.0}, {3, 2.0}, {4, 3.0}}), InvalidData);
  EXPECT_THROW(power_law_fit({{2, 1.0}, {2, 2.0}, {3, 3.0}, {3, 4.0}}), InvalidData);
  EXPECT_THROW(power_law_fit({{2, 1.0}, {3, 0.0}, {4, 3.0}, {5, 4.0}}), InvalidData);
}

TEST(ApparentExponent, PlantedFamily) {
  const double i0 = 1.7, a = 0.5;
  std::vector<PeakPoint> pts;
  for (int n = 2; n <= 100; ++n) pts.push_back({n, i0 * n * n * a});
  const auto r = apparent_exponent(pts, i0);
  EXPECT_NEAR(r.A, a, 1e-12);
  EXPECT_EQ(r.I0, i0);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double ln_n = std::log(static_cast<double>(pts[k].first));
    EXPECT_NEAR(r.xi_per_n[k].second, 2.0 + std::log(a) / ln_n, 1e-12);
    EXPECT_NEAR(r.correction_per_n[k].second, std::log(a), 1e-10);
    const double dev = std::abs(r.xi_per_n[k].second - 2.0);
    EXPECT_LT(dev, previous);
    previous = dev;
  }
  const auto squares = apparent_exponent({{2, 4.0}, {5, 25.0}, {9, 81.0}}, 1.0);
  for (const auto& c : squares.correction_per_n) EXPECT_NEAR(c.second, 0.0, 1e-14);

  EXPECT_THROW(apparent_exponent({{1, 1.0}, {2, 4.0}}, 1.0), InvalidData);
  EXPECT_THROW(apparent_exponent({{2, 4.0}}, 0.0), InvalidParameter);
}

TEST(Sweep, OrderedResultsAndFailureCapture) {
  const auto t = sr_time_grid(0.5, 201);
  SweepOptions o;
  o.workers = 2;
  const std::vector<int> ns{5, 2, 8};
  const auto pts = sr_sweep(sr(1, true), 0.1, ns, t, o);
  ASSERT_EQ(pts.size(), 3u);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    EXPECT_EQ(pts[k].n_atoms, ns[k]);
    EXPECT_TRUE(pts[k].ok());
    const auto direct = peak_extract(sr_transient_exact(sr(ns[k], true), 0.1, t), Channel::tot);
    EXPECT_EQ(pts[k].peak.imax, direct.imax);
  }
  EXPECT_GT(pts[2].peak.imax, pts[0].peak.imax);

  ModelParams driven = sr(1);
  driven.omega_p = 0.1;
  o.keep_going = true;
  const auto failed = sr_sweep(driven, 0.1, {2, 3}, t, o);
  EXPECT_FALSE(failed[0].ok());
  EXPECT_FALSE(failed[1].ok());
  o.keep_going = false;
  EXPECT_THROW(sr_sweep(driven, 0.1, {2, 3}, t, o), InvalidConfiguration);
}

TEST(Sweep, SingleEmitterScale) {
  const auto t = sr_time_grid();
  const double i0 = single_emitter_peak(sr(7), 0.1, t);
  EXPECT_EQ(i0, peak_extract(sr_transient_exact(sr(1), 0.1, t), Channel::tot).imax);
  EXPECT_NEAR(i0, 6.0 * 0.98, 1e-9);
}

TEST(Csv, TraceColumns) {
  BurstTrace b;
  b.t = {0.0, 0.25};
  b.i31 = {1.0, 0.5};
  b.i32 = {0.25, 0.125};
  b.itot = {1.25, 0.625};
  std::ostringstream out;
  write_trace_csv(out, b);
  EXPECT_EQ(out.str(), "t,I31,I32,Itot\n0,1,0.25,1.25\n0.25,0.5,0.125,0.625\n");
}
