#pragma once

#include <string_view>
#include <vector>

namespace ddent {

enum class SequenceKind { Free, PDD, CPMG, UDD, Custom };

std::string_view to_string(SequenceKind kind);
SequenceKind parse_sequence_kind(std::string_view name);

// Piecewise-constant ±1 function on [0, window]. The value at t is
// initial_sign * (-1)^(number of flips <= t).
struct SwitchingPattern {
  double window = 0.0;
  int initial_sign = 1;
  std::vector<double> flips;

  int sign_at(double t) const;
  // Exact integral of the sign over [0, t].
  double integral(double t) const;
  // Number of flips strictly before t.
  std::size_t flips_before(double t) const;

  bool operator==(const SwitchingPattern&) const = default;
};

// Product s1(t) s2(t) of two switching functions.
using CombinedSwitching = SwitchingPattern;

// Ideal instantaneous pi-pulse train on [0, window].
//
// `times()` are the pulse instants of the unshifted sequence. A shifted copy
// realizes s(t') -> s(t' + shift): its flips are the base instants translated
// by -shift, with those at or before 0 dropped (each dropped flip toggles the
// initial sign). The sign stays constant past the last translated flip.
class PulseSequence {
 public:
  static PulseSequence make(SequenceKind kind, int n, double window);
  static PulseSequence custom(std::vector<double> times, double window);

  PulseSequence shifted(double shift) const;

  SequenceKind kind() const { return kind_; }
  int n() const { return static_cast<int>(times_.size()); }
  double window() const { return window_; }
  double shift() const { return shift_; }
  const std::vector<double>& times() const { return times_; }
  const SwitchingPattern& pattern() const { return pattern_; }

  int switching_value(double t) const;
  double z_integral(double t) const;

 private:
  PulseSequence(SequenceKind kind, std::vector<double> times, double window, double shift);

  SequenceKind kind_ = SequenceKind::Free;
  std::vector<double> times_;
  double window_ = 0.0;
  double shift_ = 0.0;
  SwitchingPattern pattern_;
};

// Flip instants closer than this fraction of the window are treated as
// coincident when two patterns are multiplied.
inline constexpr double kFlipCoincidenceTolerance = 1e-12;

CombinedSwitching combine(const SwitchingPattern& a, const SwitchingPattern& b);
CombinedSwitching combine(const PulseSequence& a, const PulseSequence& b);

// h(t) = ∫_0^t s1 s2.
double h_integral(const PulseSequence& a, const PulseSequence& b, double t);

// Window-independent recipe for a sequence. Pulse positions are fractions of
// the evaluation window (t_k = δ_k t), so the same recipe yields a different
// PulseSequence at every grid time. `alpha` is the absolute time shift of the
// second qubit's copy.
struct SequenceSpec {
  SequenceKind kind = SequenceKind::Free;
  int n = 0;
  double alpha = 0.0;
  std::vector<double> custom_fractions;

  void validate() const;
  PulseSequence instantiate(double window) const;
  PulseSequence instantiate_shifted(double window) const;

  bool operator==(const SequenceSpec&) const = default;
};

}  // namespace ddent
