#pragma once

namespace ddent {

enum class CutoffKind { Exponential };

// J(ω) = g ω^s / ω_c^(s-1) G(ω, ω_c).
struct BathSpectrum {
  double g = 0.1;
  double ohmicity = 1.0;
  double omega_c = 20.0;
  CutoffKind cutoff = CutoffKind::Exponential;

  void validate() const;
};

// Classical 1/f^a noise on the direct qubit-qubit coupling, supported on
// ω_ir <= |ω| <= ω_uv.
struct NoiseSpectrum {
  double A0 = 10.0;
  double a = 1.0;
  double omega_ir = 6.283185307179586;
  double omega_uv = 6283.185307179586;

  void validate() const;
};

// Default ultraviolet cutoff as a multiple of the infrared one.
inline constexpr double kDefaultUvOverIr = 1e3;

double bath_J(const BathSpectrum& spec, double omega);
double noise_S(const NoiseSpectrum& spec, double omega);

double thermal_coth(double beta, double omega);
double bose_n(double beta, double omega);

}  // namespace ddent
