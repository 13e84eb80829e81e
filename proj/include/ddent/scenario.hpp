#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ddent/dynamics.hpp"
#include "ddent/kernels.hpp"

namespace ddent {

struct CurveResult {
  ScenarioConfig config;
  std::vector<KernelSet> kernels;
  std::vector<double> concurrence;
  // Smallest eigenvalue of each evolved state.
  std::vector<double> min_eigenvalue;
};

// Kernels, evolved |+,+> state and concurrence at every grid time.
CurveResult run_scenario(const ScenarioConfig& cfg, unsigned threads = 0);

// Concurrence of the evolved |+,+> state at a single time.
double concurrence_at(const ScenarioConfig& cfg, double t);

// Columns t, C, gamma, D, mu, R, r, Phi with R = 2p + q.
void write_curve_csv(std::ostream& os, const CurveResult& curve);
// Columns t, Z, gamma, D, h, mu, p, q, r, Phi.
void write_kernels_csv(std::ostream& os, const std::vector<KernelSet>& kernels);

struct Peak {
  double t = 0.0;
  double C = 0.0;
};

// Largest grid value of C.
Peak grid_peak(const CurveResult& curve);
// First grid point that is a strict local maximum of C above `floor`;
// falls back to the global maximum when C never turns over.
Peak first_grid_peak(const CurveResult& curve, double floor = 1e-6);

// Golden-section refinement of a local maximum of C inside [a, b].
Peak refine_peak(const ScenarioConfig& cfg, double a, double b, double tol = 1e-4);

struct AlphaSweepRow {
  double alpha = 0.0;
  double peak_C = 0.0;
  double peak_t = 0.0;
};

// Peak concurrence and its time for each α. Peaks are refined around the
// grid argmax to a bracket no wider than `tol`.
std::vector<AlphaSweepRow> sweep_alpha(const ScenarioConfig& base, const std::vector<double>& alphas,
                                       double tol = 1e-4, unsigned threads = 0);

struct FigureScenario {
  std::string id;
  std::string title;
  std::vector<ScenarioConfig> curves;
};

const std::vector<std::string>& figure_ids();
FigureScenario figure_scenario(const std::string& id);

struct FigureOutput {
  std::vector<CurveResult> curves;
  std::vector<std::string> files;
};

// Runs every curve and writes one curve CSV and one kernel CSV per curve plus
// <id>.svg into `out_dir`.
FigureOutput run_figure(const FigureScenario& fig, const std::string& out_dir, unsigned threads = 0);

}  // namespace ddent
