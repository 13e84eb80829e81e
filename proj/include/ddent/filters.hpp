#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "ddent/pulses.hpp"
#include "ddent/quad.hpp"

namespace ddent {

using Complex = std::complex<double>;

// Below these values of ω t, φ and dn are evaluated from their Taylor series.
inline constexpr double kSmallOmegaT = 1e-4;
inline constexpr double kDnSeriesOmegaT = 2e-2;

// Global sign that maps the ϑ + ν − t/ω expansion onto the double integral
// ∫_0^t dt1 ∫_0^t1 dt2 s(t1) s(t2) sin[ω(t1 − t2)]. Fixed once by comparing
// against dn_direct for free evolution at ω = t = 1.
inline constexpr double kDnClosedFormSign = -1.0;

enum class FilterProvenance { ClosedForm, DirectQuadrature };

struct FilterEvaluation {
  double omega = 0.0;
  double t = 0.0;
  Complex phi{};
  double F = 0.0;
  FilterProvenance provenance = FilterProvenance::ClosedForm;
};

// φ(ω, t) = ∫_0^t s(t') e^{iωt'} dt'.
Complex phi(const SwitchingPattern& s, double omega, double t);
Complex phi(const PulseSequence& seq, double omega, double t);
// Same integral by Gauss-Kronrod quadrature on each sign-constant segment.
Complex phi_direct(const SwitchingPattern& s, double omega, double t);

// F(ωt) = (ω²/2) |φ|².
double filter_F(const SwitchingPattern& s, double omega, double t);
double filter_F(const PulseSequence& seq, double omega, double t);
// F(ωt)/ω² = |φ|²/2, finite at ω = 0 where it equals Z(t)²/2.
double filter_F_over_omega_sq(const SwitchingPattern& s, double omega, double t);
double filter_combined(const CombinedSwitching& c, double omega, double t);

FilterEvaluation evaluate_filter(const SwitchingPattern& s, double omega, double t,
                                 FilterProvenance provenance = FilterProvenance::ClosedForm);

// Uncalibrated ϑ(ω,t) + ν(ω,t) − t/ω of a single sequence.
double dn_theta_nu(const SwitchingPattern& s, double omega, double t);

// d(ω,t) = ∫_0^t dt1 s1(t1) ∫_0^t1 dt2 s2(t2) sin[ω(t1 − t2)], evaluated as
// the running sum Im Σ_k s1_k conj(φ2(a_k)) E_k + s1_k s2_k (ωL_k − sin ωL_k)/ω²
// over merged segments. This is the ϑ + ν − t/ω expansion regrouped so that
// no O(n/ω) terms cancel; kernel sweeps use the expanded form directly.
double dn_closed(const SwitchingPattern& s1, const SwitchingPattern& s2, double omega, double t);
double dn_closed(const PulseSequence& s1, const PulseSequence& s2, double omega, double t);
// Exact sum over sign-constant rectangles of the (t1, t2) triangle.
double dn_direct(const SwitchingPattern& s1, const SwitchingPattern& s2, double omega, double t);
double dn_direct(const PulseSequence& s1, const PulseSequence& s2, double omega, double t);

namespace detail {

// A pattern clipped to [0, t]: only flips strictly before t are kept.
struct Clipped {
  int sigma = 1;
  std::span<const double> flips;
  double t = 0.0;
};

Clipped clip(const SwitchingPattern& s, double t);

inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Closed forms in terms of precomputed phases e^{iωx} at the flips and at t.
Complex phi_from_phases(const Clipped& s, std::span<const Complex> phases, Complex end_phase, double omega);
double theta_nu_from_phases(const Clipped& s, std::span<const Complex> phases, Complex end_phase, double omega);
double dn_cross_from_phases(const Clipped& s1, std::span<const Complex> phases1, const Clipped& s2,
                            std::span<const Complex> phases2, Complex end_phase, double omega, double h);

// M_k = ∫_0^t s τ^k dτ for k = 0..3; φ ≈ Σ (iω)^k M_k / k!.
std::array<double, 4> phi_moments(const Clipped& s);
Complex phi_series(const std::array<double, 4>& moments, double omega);
// A_k = ∫∫_{t2<t1} s1(t1) s2(t2) (t1 − t2)^k for k = 1, 3, 5, 7.
std::array<double, 4> dn_moments(const Clipped& s1, const Clipped& s2);
double dn_series(const std::array<double, 4>& moments, double omega);

}  // namespace detail

// e^{iωx} for a fixed list of instants, either at one ω or over every node of
// a uniform panel grid. The grid sweep advances phases panel to panel by
// multiplication and resynchronizes from sincos every kResync panels.
class PhaseTable {
 public:
  static constexpr std::size_t kResync = 32;

  explicit PhaseTable(std::vector<double> instants) : x_(std::move(instants)) {}

  std::size_t size() const { return x_.size(); }
  void fill(double omega, std::span<Complex> out) const;

  template <class Fn>
  void sweep(const PanelGrid& grid, Fn&& on_node) const {
    const std::size_t n = x_.size();
    std::vector<Complex> base(n), step(n), node(n), offs(gk15::kNodes * n);
    for (std::size_t k = 0; k < n; ++k) {
      step[k] = std::polar(1.0, grid.h * x_[k]);
      for (std::size_t j = 0; j < gk15::kNodes; ++j) offs[j * n + k] = std::polar(1.0, grid.offsets[j] * x_[k]);
    }
    for (std::size_t p = 0; p < grid.panels; ++p) {
      const double start = grid.a + static_cast<double>(p) * grid.h;
      if (p % kResync == 0) fill(start, base);
      for (std::size_t j = 0; j < gk15::kNodes; ++j) {
        const Complex* o = offs.data() + j * n;
        for (std::size_t k = 0; k < n; ++k) node[k] = detail::cmul(base[k], o[k]);
        on_node(start + grid.offsets[j], std::span<const Complex>(node));
      }
      for (std::size_t k = 0; k < n; ++k) base[k] = detail::cmul(base[k], step[k]);
    }
  }

 private:
  std::vector<double> x_;
};

// φ of one pattern at many frequencies.
class PatternSpectrum {
 public:
  PatternSpectrum(SwitchingPattern s, double t);
  PatternSpectrum(const PatternSpectrum&) = delete;
  PatternSpectrum& operator=(const PatternSpectrum&) = delete;
  PatternSpectrum(PatternSpectrum&&) = default;

  Complex at(double omega) const;

  template <class Fn>
  void sweep(const PanelGrid& grid, Fn&& on_sample) const {
    table_.sweep(grid, [&](double omega, std::span<const Complex> phases) {
      on_sample(omega, from_phases(omega, phases));
    });
  }

 private:
  Complex from_phases(double omega, std::span<const Complex> phases) const;

  SwitchingPattern pattern_;
  detail::Clipped clipped_;
  std::array<double, 4> moments_{};
  PhaseTable table_;
};

// φ of the first pattern together with the symmetrized (d12 + d21)/2 of a
// pattern pair, at many frequencies.
class PairSpectrum {
 public:
  struct Sample {
    Complex phi1{};
    double dn_sym = 0.0;
  };

  PairSpectrum(SwitchingPattern s1, SwitchingPattern s2, double t);
  PairSpectrum(const PairSpectrum&) = delete;
  PairSpectrum& operator=(const PairSpectrum&) = delete;
  PairSpectrum(PairSpectrum&&) = default;

  Sample at(double omega) const;

  template <class Fn>
  void sweep(const PanelGrid& grid, Fn&& on_sample) const {
    table_.sweep(grid, [&](double omega, std::span<const Complex> phases) {
      on_sample(omega, from_phases(omega, phases));
    });
  }

  bool identical() const { return identical_; }

 private:
  Sample from_phases(double omega, std::span<const Complex> phases) const;

  SwitchingPattern s1_;
  SwitchingPattern s2_;
  detail::Clipped c1_;
  detail::Clipped c2_;
  bool identical_ = false;
  double h_ = 0.0;
  std::array<double, 4> phi_moments_{};
  std::array<double, 4> dn_moments_{};
  PhaseTable table_;
};

}  // namespace ddent
