#include <gtest/gtest.h>

#include <cmath>

#include "ddent/errors.hpp"
#include "ddent/spectra.hpp"

using namespace ddent;

TEST(BathJ, Values) {
  const BathSpectrum bath{0.1, 1.0, 20.0};
  EXPECT_EQ(bath_J(bath, 0.0), 0.0);
  EXPECT_NEAR(bath_J(bath, 20.0), 0.735758882342885, 1e-14);
  EXPECT_NEAR(bath_J(bath, 1.0), 0.0951229424500714, 1e-14);
  EXPECT_THROW(bath_J(bath, -1.0), DomainError);
}

TEST(BathJ, NonNegativeAndDecaying) {
  const BathSpectrum bath{0.1, 1.0, 20.0};
  const double peak = bath_J(bath, bath.omega_c);
  for (double w = 0.0; w < 2000.0; w += 0.37) {
    EXPECT_GE(bath_J(bath, w), 0.0);
    if (w > 10.0 * bath.omega_c) EXPECT_LT(bath_J(bath, w), peak * std::exp(1.0));
  }
}

TEST(NoiseS, ValuesAndSupport) {
  const NoiseSpectrum noise{10.0, 1.0, 2.0 * M_PI, 2000.0 * M_PI};
  EXPECT_NEAR(noise_S(noise, 10.0), 10.0, 1e-14);
  EXPECT_EQ(noise_S(noise, -10.0), noise_S(noise, 10.0));
  EXPECT_EQ(noise_S(noise, noise.omega_ir / 2.0), 0.0);
  EXPECT_EQ(noise_S(noise, 2.0 * noise.omega_uv), 0.0);
  for (double w = 1.0; w < 1e4; w *= 1.7) EXPECT_EQ(noise_S(noise, w), noise_S(noise, -w));
}

TEST(NoiseS, Validation) {
  NoiseSpectrum bad{10.0, 1.0, 2.0, 1.0};
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = NoiseSpectrum{-1.0, 1.0, 2.0, 10.0};
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Thermal, Values) {
  EXPECT_NEAR(thermal_coth(1.0, 1.0), 2.16395341373865, 1e-13);
  EXPECT_NEAR(thermal_coth(1.0, 1e3), 1.0, 1e-15);
  EXPECT_NEAR(2.0 * bose_n(1.0, 2.0) + 1.0, 1.0 / std::tanh(1.0), 1e-14);
}

TEST(Thermal, CothIdentityOnLogGrid) {
  for (double w = 1e-3; w <= 1e3; w *= 1.25) {
    const double lhs = 2.0 * bose_n(1.0, w) + 1.0;
    EXPECT_NEAR(lhs - thermal_coth(1.0, w), 0.0, 1e-13 * std::max(1.0, lhs)) << w;
  }
}
