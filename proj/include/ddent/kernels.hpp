#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ddent/pulses.hpp"
#include "ddent/spectra.hpp"

namespace ddent {

enum class DynamicsMode { CommonBathOnly, WithInteractionNoise };

std::string_view to_string(DynamicsMode mode);
DynamicsMode parse_dynamics_mode(std::string_view name);

struct QuadSettings {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::size_t max_panels = 200000;
  // Bath integrals are truncated at omega_max_factor * ω_c.
  double omega_max_factor = 50.0;

  void validate() const;
};

struct ScenarioConfig {
  std::string name = "curve";
  BathSpectrum bath;
  std::optional<NoiseSpectrum> noise;
  double beta = 1.0;
  double omega0 = 1.0;
  double lambda0 = 0.0;
  // The first qubit runs `sequence`; the second runs the same sequence
  // shifted by sequence.alpha.
  SequenceSpec sequence;
  std::vector<double> time_grid;
  QuadSettings quad;
  DynamicsMode mode = DynamicsMode::CommonBathOnly;

  void validate() const;
};

// Uniform grid of `points` times on [t_min, t_max].
std::vector<double> linspace(double t_min, double t_max, std::size_t points);

struct KernelSet {
  double t = 0.0;
  double Z = 0.0;
  double gamma = 0.0;
  double D = 0.0;
  double h = 0.0;
  double mu = 0.0;
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  // Off-diagonal phase per unit of (k'l' - kl): D/2 - λ0 h.
  double Phi = 0.0;

  double R() const { return 2.0 * p + q; }
};

struct PqrKernels {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

double gamma_kernel(const ScenarioConfig& cfg, double t);
double D_kernel(const ScenarioConfig& cfg, double t);
double mu_kernel(const ScenarioConfig& cfg, double t);
PqrKernels pqr_kernels(const ScenarioConfig& cfg, double t);

KernelSet compute_kernels(const ScenarioConfig& cfg, double t);
// Evaluates every time of the grid on a worker pool; output order follows
// the grid.
std::vector<KernelSet> compute_kernels_grid(const ScenarioConfig& cfg, const std::vector<double>& times,
                                            unsigned threads = 0);

// Runs body(i) for i in [0, count) on up to `threads` workers (0 picks the
// hardware concurrency). The first exception thrown is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace ddent
