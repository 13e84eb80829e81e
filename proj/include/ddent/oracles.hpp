#pragma once

#include <cstdint>
#include <vector>

#include "ddent/dynamics.hpp"
#include "ddent/kernels.hpp"
#include "ddent/pulses.hpp"
#include "ddent/spectra.hpp"

namespace ddent {

inline constexpr std::size_t kDefaultSynthesisModes = 2048;

// Log-spaced spectral synthesis grid over [ω_ir, ω_uv] with per-mode
// amplitudes √(S(ω_j) Δω_j / π).
struct SynthesisGrid {
  std::vector<double> omegas;
  std::vector<double> amplitudes;
};

SynthesisGrid make_synthesis_grid(const NoiseSpectrum& spec, std::size_t modes = kDefaultSynthesisModes);

struct UniformGrid {
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t count = 0;
};

struct NoiseRealization {
  std::vector<double> values;
  UniformGrid grid;
  std::uint64_t seed = 0;
  SynthesisGrid synthesis;
};

// Independent generator for realization `index` of a run seeded with `seed`.
std::uint64_t realization_seed(std::uint64_t seed, std::uint64_t index);

// ξ(t) = Σ_j A_j (a_j cos ω_j t + b_j sin ω_j t) with standard normal a_j, b_j.
NoiseRealization sample_noise(const NoiseSpectrum& spec, const UniformGrid& grid, std::uint64_t seed,
                              std::size_t modes = kDefaultSynthesisModes);

struct McStatistics {
  std::size_t realizations = 0;
  double mean = 0.0;
  double mean_se = 0.0;
  double variance = 0.0;
  double variance_se = 0.0;
  double kurtosis = 0.0;
  double kurtosis_se = 0.0;
  // ⟨cos 2Γ⟩ and ⟨sin 2Γ⟩, i.e. ⟨e^{-2iΓ}⟩ = cos_mean - i sin_mean.
  double cos2_mean = 0.0;
  double cos2_se = 0.0;
  double sin2_mean = 0.0;
  double sin2_se = 0.0;
};

struct McOptions {
  std::size_t realizations = 10000;
  std::uint64_t seed = 1;
  std::size_t modes = kDefaultSynthesisModes;
  // Trapezoid steps satisfy ω_uv * dt <= this value.
  double phase_step = 0.05;
  unsigned threads = 0;
};

// Γ(t) = ∫_0^t ξ(t1) s1(t1) s2(t1) dt1 over synthesized paths.
McStatistics mc_gamma_variance(const ScenarioConfig& cfg, double t, const McOptions& options);

// Variance of Γ implied by the discrete synthesis grid with trapezoid
// weights; the Monte-Carlo estimate converges to this value.
double synthesis_gamma_variance(const ScenarioConfig& cfg, double t, const McOptions& options);

struct BosonMode {
  double omega = 1.0;
  double g = 0.1;
};

// A few discrete bath modes, each truncated to Fock levels 0..levels.
struct DiscreteModeBath {
  std::vector<BosonMode> modes;
  std::size_t levels = 40;
  double beta = 1.0;

  void validate() const;
};

inline constexpr double kFockTailLimit = 1e-8;

// Exact propagation of two qubits coupled through σz to discrete modes,
// with π flips realized as sign changes of the coupling between pulses.
TwoQubitState single_mode_evolve(const DiscreteModeBath& bath, const SwitchingPattern& s1, const SwitchingPattern& s2,
                                 double omega0, double t, const TwoQubitState& rho0);

// Kernels of the closed-form dynamics for a discrete bath: the spectral
// integrals become Σ_r 4 g_r² (...). p, q and r use the exact product
// φ1 φ2* instead of the shifted-copy approximation. `dn_sign` multiplies
// the interaction kernel and exists so that tests can confirm a wrong sign
// is detected.
KernelSet discrete_mode_kernels(const DiscreteModeBath& bath, const SwitchingPattern& s1, const SwitchingPattern& s2,
                                double t, double dn_sign = 1.0);

// D(t) for an Ohmic exponential-cutoff bath in the time domain, as a double
// sum over switching steps: (D12 + D21)/2 with
// D12 = Σ_kl c_k c_l [G(t - t_l) - Θ(t_k - t_l) G(t_k - t_l)], G(τ) = g(ω_c τ - arctan ω_c τ).
double ohmic_D_time_domain(const BathSpectrum& bath, const SwitchingPattern& s1, const SwitchingPattern& s2, double t);

}  // namespace ddent
