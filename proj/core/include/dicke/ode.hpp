#pragma once

// Adaptive Dormand-Prince 5(4) integrator with the standard fourth-order
// continuous extension, so output times never constrain the step size.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>

#include "dicke/errors.hpp"

namespace dicke::ode {

struct Options {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0 selects automatically
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
};

namespace detail {

// Butcher tableau of DOPRI5.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Error coefficients b - b*.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output.
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

template <class State>
double error_norm(const State& err, const State& y0, const State& y1, const Options& opt) {
  double sum = 0.0;
  const auto n = err.size();
  for (decltype(err.size()) i = 0; i < n; ++i) {
    const double scale =
        opt.atol + opt.rtol * std::max(std::abs(y0.data()[i]), std::abs(y1.data()[i]));
    const double r = std::abs(err.data()[i]) / scale;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(n));
}

template <class State>
double scaled_norm(const State& v, const State& y, const Options& opt) {
  double sum = 0.0;
  const auto n = v.size();
  for (decltype(v.size()) i = 0; i < n; ++i) {
    const double r = std::abs(v.data()[i]) / (opt.atol + opt.rtol * std::abs(y.data()[i]));
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(n));
}

}  // namespace detail

/// Integrates dy/dt = rhs(t, y) from times.front() and calls
/// observe(index, t, y) at every entry of `times` (strictly increasing).
/// `rhs` has signature void(double t, const State& y, State& dydt).
template <class State, class Rhs, class Observer>
Stats integrate(Rhs&& rhs, State y, std::span<const double> times, Observer&& observe,
                const Options& opt = {}) {
  using namespace detail;
  Stats stats;
  if (times.empty()) return stats;
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvalidParameter("time grid must be strictly increasing");

  double t = times.front();
  const double t_end = times.back();
  observe(std::size_t{0}, t, static_cast<const State&>(y));
  if (times.size() == 1) return stats;

  State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, ytmp = y, ynew = y, err = y;
  rhs(t, y, k1);
  ++stats.evaluations;

  double h = opt.initial_step;
  if (h <= 0.0) {
    // Hairer & Wanner, starting step heuristic.
    const double d0 = scaled_norm(y, y, opt);
    const double d1n = scaled_norm(k1, y, opt);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, t_end - t);
    ytmp = y + h0 * k1;
    rhs(t + h0, ytmp, k2);
    ++stats.evaluations;
    const double d2 = scaled_norm(State(k2 - k1), y, opt) / h0;
    const double dmax = std::max(d1n, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
    h = std::min(100 * h0, h1);
  }
  h = std::min({h, opt.max_step, t_end - t});

  std::size_t next = 1;
  constexpr double safety = 0.9, min_factor = 0.2, max_factor = 10.0;
  double previous_error = 1e-4;
  bool last_rejected = false;

  while (next < times.size()) {
    if (stats.accepted + stats.rejected >= opt.max_steps)
      throw StiffnessError("step budget exhausted at t = " + std::to_string(t) +
                               "; shorten the Gamma*t span or relax tolerances",
                           t);
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw StiffnessError("step size underflow at t = " + std::to_string(t) +
                               "; the problem is too stiff for the explicit integrator over this span",
                           t);
    h = std::min(h, t_end - t);

    ytmp = y + h * (a21 * k1);
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, ytmp, k6);
    ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    rhs(t + h, ynew, k7);
    stats.evaluations += 6;

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, ynew, opt);

    if (!std::isfinite(en)) {
      h *= min_factor;
      ++stats.rejected;
      last_rejected = true;
      continue;
    }

    if (en <= 1.0) {
      const double t_new = t + h;
      // Emit every requested time inside (t, t_new] from the interpolant.
      bool have_cont = false;
      State r2 = y, r3 = y, r4 = y, r5 = y;
      while (next < times.size() && times[next] <= t_new * (1 + 1e-15) + 1e-300) {
        if (!have_cont) {
          r2 = ynew - y;
          r3 = h * k1 - r2;
          r4 = r2 - h * k7 - r3;
          r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
          have_cont = true;
        }
        const double theta = std::clamp((times[next] - t) / h, 0.0, 1.0);
        const double one_minus = 1.0 - theta;
        if (next + 1 == times.size() && theta == 1.0) {
          observe(next, times[next], static_cast<const State&>(ynew));
        } else {
          State out = y + theta * (r2 + one_minus * (r3 + theta * (r4 + one_minus * r5)));
          observe(next, times[next], static_cast<const State&>(out));
        }
        ++next;
      }
      // PI step control (Gustafsson).
      double factor = safety * std::pow(en, -0.7 / 5.0) * std::pow(previous_error, 0.4 / 5.0);
      if (en == 0.0) factor = max_factor;
      factor = std::clamp(factor, min_factor, max_factor);
      if (last_rejected) factor = std::min(factor, 1.0);
      previous_error = std::max(en, 1e-4);
      y.swap(ynew);
      k1.swap(k7);
      t = t_new;
      h = std::min(h * factor, opt.max_step);
      ++stats.accepted;
      last_rejected = false;
    } else {
      const double factor = std::max(min_factor, safety * std::pow(en, -1.0 / 5.0));
      h *= factor;
      ++stats.rejected;
      last_rejected = true;
    }
  }
  return stats;
}

}  // namespace dicke::ode
