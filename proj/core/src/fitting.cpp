#include "dicke/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace dicke {

double SechFit::operator()(double t) const {
  const double s = 1.0 / std::cosh((t - t_d) / tau);
  return imax * s * s;
}

namespace {

double cost(std::span<const double> t, std::span<const double> y, const SechFit& f) {
  double c = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = f(t[i]) - y[i];
    c += r * r;
  }
  return c;
}

}  // namespace

SechFit fit_sech2(std::span<const double> t, std::span<const double> y, const SechFit& guess,
                  const LmOptions& opt) {
  if (t.size() != y.size()) throw InvalidData("sech2 fit: t and y sizes differ");
  SechFit f = guess;
  f.points = t.size();
  if (t.size() < 4)
    throw FitFailure("sech2 fit underdetermined: " + std::to_string(t.size()) + " points", f);
  if (!(guess.tau > 0.0) || !std::isfinite(guess.imax) || !std::isfinite(guess.t_d))
    throw InvalidParameter("sech2 fit needs a finite guess with tau > 0");

  double c = cost(t, y, f);
  double lambda = 1e-3;
  bool converged = false;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double u = (t[i] - f.t_d) / f.tau;
      const double s = 1.0 / std::cosh(u);
      const double s2 = s * s, th = std::tanh(u);
      const double r = f.imax * s2 - y[i];
      Eigen::Vector3d g(s2, 2.0 * f.imax * s2 * th / f.tau, 2.0 * f.imax * s2 * th * u / f.tau);
      jtj += g * g.transpose();
      jtr += g * r;
    }
    if (jtr.lpNorm<Eigen::Infinity>() <= opt.gradient_tol) {
      converged = true;
      break;
    }

    bool accepted = false;
    while (lambda < 1e20) {
      Eigen::Matrix3d a = jtj;
      for (int k = 0; k < 3; ++k) a(k, k) += lambda * std::max(jtj(k, k), 1e-300);
      const Eigen::Vector3d step = -a.ldlt().solve(jtr);
      SechFit trial = f;
      trial.imax += step(0);
      trial.t_d += step(1);
      trial.tau += step(2);
      const double ct = trial.tau > 0.0 ? cost(t, y, trial) : INFINITY;
      if (std::isfinite(ct) && ct <= c) {
        const double rel = std::max({std::abs(step(0)) / std::max(std::abs(f.imax), 1e-300),
                                     std::abs(step(1)) / std::max(f.tau, std::abs(f.t_d)),
                                     std::abs(step(2)) / f.tau});
        f = trial;
        c = ct;
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
        if (rel <= opt.step_tol) converged = true;
        break;
      }
      lambda *= 10.0;
    }
    // No downhill step left at any damping: a (numerical) minimum.
    if (!accepted) converged = true;
    if (converged) break;
  }

  f.iterations = it + 1;
  f.rms_residual = std::sqrt(c / static_cast<double>(t.size())) / std::abs(f.imax);
  if (!converged) throw FitFailure("sech2 fit did not converge", f);
  if (!(f.tau > 0.0) || !std::isfinite(f.rms_residual)) throw FitFailure("sech2 fit degenerated", f);
  return f;
}

LineFit ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidData("ols: x and y sizes differ");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidData("ols needs at least two distinct x values");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ssr += r * r;
  }
  f.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return f;
}

}  // namespace dicke
