#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include <dicke/errors.hpp>
#include <dicke/ode.hpp>

using namespace dicke;

TEST(Ode, HarmonicOscillatorDenseOutput) {
  using V = Eigen::Vector2d;
  std::vector<double> t;
  for (int k = 0; k <= 100; ++k) t.push_back(0.137 * k);
  std::vector<V> out(t.size());
  const auto stats = ode::integrate(
      [](double, const V& y, V& dy) { dy = V(y[1], -y[0]); }, V(1.0, 0.0), t,
      [&](std::size_t k, double, const V& y) { out[k] = y; });
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_NEAR(out[k][0], std::cos(t[k]), 1e-7);
    EXPECT_NEAR(out[k][1], -std::sin(t[k]), 1e-7);
  }
  // Output points do not force extra steps.
  const auto endpoints = ode::integrate(
      [](double, const V& y, V& dy) { dy = V(y[1], -y[0]); }, V(1.0, 0.0), std::vector<double>{0.0, t.back()},
      [](std::size_t, double, const V&) {});
  EXPECT_EQ(stats.accepted, endpoints.accepted);
}

TEST(Ode, ComplexLinearDecay) {
  using V = Eigen::VectorXcd;
  const std::complex<double> rate(-0.5, 3.0);
  V y0(1);
  y0[0] = 1.0;
  const std::vector<double> t{0.0, 1.0, 2.0};
  std::vector<std::complex<double>> got;
  ode::integrate([&](double, const V& y, V& dy) { dy = rate * y; }, y0, t,
                 [&](std::size_t, double, const V& y) { got.push_back(y[0]); });
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_LT(std::abs(got[k] - std::exp(rate * t[k])), 1e-7);
}

TEST(Ode, Errors) {
  using V = Eigen::VectorXd;
  const V y0 = V::Ones(1);
  auto rhs = [](double, const V& y, V& dy) { dy = -1e7 * y; };
  auto sink = [](std::size_t, double, const V&) {};
  const std::vector<double> bad{0.0, 1.0, 1.0};
  EXPECT_THROW(ode::integrate(rhs, y0, bad, sink), InvalidParameter);
  ode::Options o;
  o.max_steps = 100;
  const std::vector<double> t{0.0, 1.0};
  EXPECT_THROW(ode::integrate(rhs, y0, t, sink, o), StiffnessError);
}
