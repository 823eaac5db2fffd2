#pragma once

// Least-squares fits: Levenberg-Marquardt for the sech^2 burst envelope and
// ordinary least squares for log-log power laws.

#include <span>
#include <vector>

#include "dicke/errors.hpp"

namespace dicke {

/// I(t) = imax sech^2((t - t_d) / tau).
struct SechFit {
  double imax = 0.0;
  double t_d = 0.0;
  double tau = 1.0;
  double rms_residual = 0.0;  // sqrt(mean r^2) / imax
  int iterations = 0;
  std::size_t points = 0;

  double operator()(double t) const;
};

struct LmOptions {
  int max_iterations = 500;
  double step_tol = 1e-14;      // relative parameter change
  double gradient_tol = 1e-30;
};

/// Raised when the fit does not converge; carries the last iterate.
class FitFailure : public Error {
 public:
  FitFailure(const std::string& what, SechFit last) : Error(what), last_(last) {}
  const SechFit& last() const noexcept { return last_; }

 private:
  SechFit last_;
};

/// Fits all (t, y) samples starting from `guess`. Needs at least four points.
SechFit fit_sech2(std::span<const double> t, std::span<const double> y, const SechFit& guess,
                  const LmOptions& options = {});

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

/// OLS of y against x; needs two distinct x values.
LineFit ols(std::span<const double> x, std::span<const double> y);

}  // namespace dicke
