#include <gtest/gtest.h>

#include <cmath>

#include "ddent/errors.hpp"
#include "ddent/kernels.hpp"
#include "ddent/oracles.hpp"

using namespace ddent;

namespace {

ScenarioConfig common(SequenceKind kind, int n) {
  ScenarioConfig c;
  c.bath = BathSpectrum{0.1, 1.0, 20.0};
  c.beta = 1.0;
  c.sequence.kind = kind;
  c.sequence.n = n;
  return c;
}

ScenarioConfig noisy(SequenceKind kind, int n, double alpha) {
  ScenarioConfig c = common(kind, n);
  c.mode = DynamicsMode::WithInteractionNoise;
  c.noise = NoiseSpectrum{10.0, 1.0, 2.0 * M_PI, 2000.0 * M_PI};
  c.lambda0 = 0.1;
  c.sequence.alpha = alpha;
  return c;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Kernels, ZeroTime) {
  const auto k = compute_kernels(noisy(SequenceKind::PDD, 8, 0.01), 0.0);
  for (double v : {k.Z, k.gamma, k.D, k.h, k.mu, k.p, k.q, k.r, k.Phi}) EXPECT_EQ(v, 0.0);
}

TEST(Kernels, GammaSelfRefinement) {
  auto c = common(SequenceKind::Free, 0);
  const double loose = gamma_kernel(c, 1.0);
  c.quad.rel_tol = 1e-9;
  EXPECT_LE(rel(loose, gamma_kernel(c, 1.0)), 1e-7);
}

TEST(Kernels, GammaSuppressedByManyPulses) {
  const double free = gamma_kernel(common(SequenceKind::Free, 0), 1.0);
  const double pdd = gamma_kernel(common(SequenceKind::PDD, 256), 1.0);
  EXPECT_LT(pdd, 0.05 * free);
}

TEST(Kernels, GammaDecreasesOncePulsesOutpaceCutoff) {
  // At t = 1 and ω_c = 20 one or four pulses push the filter towards the
  // peak of J and raise γ above its free value; from n = 4 on it falls.
  const double free = gamma_kernel(common(SequenceKind::Free, 0), 1.0);
  EXPECT_GT(gamma_kernel(common(SequenceKind::PDD, 4), 1.0), gamma_kernel(common(SequenceKind::PDD, 1), 1.0));
  EXPECT_GT(gamma_kernel(common(SequenceKind::PDD, 1), 1.0), free);
  double previous = INFINITY;
  for (int n : {4, 16, 64, 256}) {
    const double g = gamma_kernel(common(SequenceKind::PDD, n), 1.0);
    EXPECT_GT(g, 0.0);
    EXPECT_LT(g, previous) << n;
    previous = g;
  }
}

TEST(Kernels, FreeDClosedForm) {
  const auto c = common(SequenceKind::Free, 0);
  for (double t : {0.1, 1.0, 5.0}) {
    const double want = 0.1 * (20.0 * t - std::atan(20.0 * t));
    EXPECT_LE(rel(D_kernel(c, t), want), 1e-8) << t;
  }
}

TEST(Kernels, DMatchesTimeDomainSum) {
  for (auto kind : {SequenceKind::PDD, SequenceKind::UDD}) {
    auto c = noisy(kind, 6, 0.05);
    const double t = 2.0;
    const auto s1 = c.sequence.instantiate(t);
    const auto s2 = c.sequence.instantiate_shifted(t);
    EXPECT_LE(rel(D_kernel(c, t), ohmic_D_time_domain(c.bath, s1.pattern(), s2.pattern(), t)), 1e-8);
  }
}

TEST(Kernels, ZeroCouplingGivesZeroD) {
  auto c = common(SequenceKind::CPMG, 3);
  c.bath.g = 0.0;
  for (double t : {0.5, 3.0}) EXPECT_EQ(D_kernel(c, t), 0.0);
}

TEST(Kernels, MuProperties) {
  auto c = noisy(SequenceKind::PDD, 371, 0.0);
  const double t = 5.0;
  const double same = mu_kernel(c, t);
  c.sequence.alpha = 0.0139;
  const double shifted = mu_kernel(c, t);
  EXPECT_GT(same, 0.0);
  EXPECT_GE(shifted, 0.0);
  EXPECT_LT(shifted, same);
  // Identical sequences cancel in the product, leaving the free filter.
  auto f = noisy(SequenceKind::Free, 0, 0.0);
  EXPECT_LE(rel(mu_kernel(f, t), same), 1e-9);
  c.noise->A0 = 0.0;
  EXPECT_EQ(mu_kernel(c, t), 0.0);
  EXPECT_THROW(mu_kernel(common(SequenceKind::Free, 0), 1.0), ConfigError);
}

TEST(Kernels, AlphaZeroReduction) {
  const auto c = noisy(SequenceKind::PDD, 16, 0.0);
  for (double t = 0.25; t <= 10.0; t += 0.25) {
    const auto k = compute_kernels(c, t);
    EXPECT_LE(std::abs(k.R() - k.gamma), 1e-8 * (1.0 + k.gamma)) << t;
    EXPECT_LE(std::abs(k.r), 1e-10) << t;
  }
}

TEST(Kernels, ColdBathKillsBoseTerm) {
  auto c = noisy(SequenceKind::PDD, 4, 0.02);
  const double warm = pqr_kernels(c, 1.0).p;
  c.beta = 1e3;
  const auto cold = pqr_kernels(c, 1.0);
  EXPECT_LT(std::abs(cold.p), 1e-6 * std::abs(cold.q));
  EXPECT_GT(std::abs(warm), 1e5 * std::abs(cold.p));
  c.beta = 1e4;
  EXPECT_LT(std::abs(pqr_kernels(c, 1.0).p), 1e-6 * std::abs(cold.q));
}

TEST(Kernels, ShiftedCrossKernelSelfRefinement) {
  auto c = noisy(SequenceKind::PDD, 371, 0.0139);
  const double t = 2.0;
  const auto loose = pqr_kernels(c, t);
  c.quad.rel_tol = 1e-9;
  const auto tight = pqr_kernels(c, t);
  EXPECT_GT(std::abs(loose.r), 1e-6);
  EXPECT_LE(rel(loose.r, tight.r), 1e-7);
  EXPECT_LE(rel(loose.q, tight.q), 1e-7);
}

TEST(Kernels, CommonModeHasNoNoiseTerms) {
  const auto k = compute_kernels(common(SequenceKind::UDD, 5), 2.0);
  EXPECT_EQ(k.mu, 0.0);
  EXPECT_EQ(k.p, 0.0);
  EXPECT_EQ(k.q, 0.0);
  EXPECT_EQ(k.r, 0.0);
  EXPECT_DOUBLE_EQ(k.Phi, 0.5 * k.D);
}

TEST(Kernels, PhiIncludesDirectCoupling) {
  const auto c = noisy(SequenceKind::PDD, 8, 0.1);
  const auto k = compute_kernels(c, 3.0);
  EXPECT_NEAR(k.Phi, 0.5 * k.D - c.lambda0 * k.h, 1e-15);
}

TEST(Kernels, CutoffDoublingInsensitivity) {
  for (auto c : {common(SequenceKind::PDD, 64), noisy(SequenceKind::UDD, 10, 0.02)}) {
    const auto a = compute_kernels(c, 2.0);
    c.quad.omega_max_factor *= 2.0;
    const auto b = compute_kernels(c, 2.0);
    for (auto [x, y] : {std::pair{a.gamma, b.gamma}, {a.D, b.D}, {a.mu, b.mu}, {a.q, b.q}, {a.r, b.r}}) {
      EXPECT_LE(std::abs(x - y), 1e-9 * std::abs(y) + 1e-15);
    }
  }
}

TEST(Kernels, GridMatchesSerialAndIsOrdered) {
  const auto c = noisy(SequenceKind::CPMG, 12, 0.03);
  const auto times = linspace(0.0, 4.0, 9);
  const auto par = compute_kernels_grid(c, times, 3);
  ASSERT_EQ(par.size(), times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto serial = compute_kernels(c, times[i]);
    EXPECT_EQ(par[i].t, times[i]);
    EXPECT_EQ(par[i].gamma, serial.gamma);
    EXPECT_EQ(par[i].D, serial.D);
    EXPECT_EQ(par[i].mu, serial.mu);
  }
}

TEST(Kernels, Validation) {
  auto c = common(SequenceKind::PDD, 4);
  c.sequence.alpha = 0.1;
  EXPECT_THROW(c.validate(), ConfigError);
  auto d = noisy(SequenceKind::PDD, 4, 0.0);
  d.noise.reset();
  EXPECT_THROW(d.validate(), ConfigError);
  EXPECT_THROW(parse_dynamics_mode("both"), ConfigError);
  EXPECT_THROW(compute_kernels(common(SequenceKind::Free, 0), -1.0), DomainError);
}

TEST(Kernels, NonConvergenceIsReported) {
  auto c = common(SequenceKind::PDD, 64);
  c.quad.max_panels = 8;
  c.quad.rel_tol = 1e-14;
  EXPECT_THROW(gamma_kernel(c, 3.0), ConvergenceError);
}
