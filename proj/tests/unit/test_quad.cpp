#include <gtest/gtest.h>

#include <cmath>

#include "ddent/errors.hpp"
#include "ddent/quad.hpp"
#include "ddent/spectra.hpp"

using namespace ddent;

TEST(Quad, Exponential) {
  QuadSpec spec{0.0, 40.0, 1e-12, 1e-14};
  const auto r = integrate([](double x) { return std::exp(-x); }, spec);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0 - std::exp(-40.0), 1e-10);
}

TEST(Quad, OscillatoryWithHint) {
  QuadSpec spec{0.0, 2.0 * M_PI, 1e-12, 1e-14};
  spec.oscillation_period_hint = M_PI / 64.0;
  const auto r = integrate([](double x) { return std::pow(std::sin(64.0 * x), 2); }, spec);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, M_PI, 1e-9);
}

TEST(Quad, SelfRefinement) {
  auto f = [](double w) { return w > 0 ? w * thermal_coth(1.0, w) * std::exp(-w) : 2.0; };
  QuadSpec loose{0.0, 1.0, 1e-8, 1e-14};
  QuadSpec tight{0.0, 1.0, 1e-9, 1e-15};
  const auto a = integrate(f, loose);
  const auto b = integrate(f, tight);
  EXPECT_NEAR(a.value, b.value, std::max(a.error_estimate, 1e-8 * std::abs(b.value)));
  // The tighter run may only move the value by the looser error estimate.
  EXPECT_LE(std::abs(a.value - b.value), a.error_estimate + b.error_estimate + 1e-15);
}

TEST(Quad, Linearity) {
  auto f = [](double x) { return std::sin(3.0 * x) * std::exp(-x); };
  auto g = [](double x) { return x * x; };
  QuadSpec spec{0.0, 5.0, 1e-10, 1e-14};
  const auto rf = integrate(f, spec);
  const auto rg = integrate(g, spec);
  const auto rs = integrate([&](double x) { return f(x) + g(x); }, spec);
  EXPECT_NEAR(rs.value, rf.value + rg.value, rf.error_estimate + rg.error_estimate + rs.error_estimate + 1e-13);
}

TEST(Quad, VectorIntegrand) {
  QuadSpec spec{0.0, 1.0, 1e-12, 1e-14};
  const auto r = integrate_n<2>([](double x) { return QuadVec<2>{x, x * x}; }, spec);
  EXPECT_NEAR(r.value[0], 0.5, 1e-14);
  EXPECT_NEAR(r.value[1], 1.0 / 3.0, 1e-14);
}

TEST(Quad, ErrorEstimateBoundsResult) {
  QuadSpec spec{0.0, 3.0, 1e-6, 1e-14};
  const auto r = integrate([](double x) { return std::cos(20.0 * x); }, spec);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.error_estimate, std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value)));
  EXPECT_NEAR(r.value, std::sin(60.0) / 20.0, 1e-6 * std::abs(r.value) + 1e-12);
}

TEST(Quad, Failures) {
  EXPECT_THROW(integrate([](double) { return 1.0; }, QuadSpec{1.0, 0.0}), ConfigError);
  EXPECT_THROW(integrate([](double x) { return 1.0 / (x - 0.5); }, QuadSpec{0.0, 1.0, 1e-8, 1e-12, 100}), ConvergenceError);
  QuadSpec capped{0.0, 1.0, 1e-14, 1e-16, 4};
  const auto r = integrate([](double x) { return std::sqrt(x); }, capped);
  EXPECT_FALSE(r.converged);
}
