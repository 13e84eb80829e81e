#include "ddent/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ddent/errors.hpp"

namespace ddent {

std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::Free: return "free";
    case SequenceKind::PDD: return "pdd";
    case SequenceKind::CPMG: return "cpmg";
    case SequenceKind::UDD: return "udd";
    case SequenceKind::Custom: return "custom";
  }
  return "unknown";
}

SequenceKind parse_sequence_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "free" || lower == "none") return SequenceKind::Free;
  if (lower == "pdd") return SequenceKind::PDD;
  if (lower == "cpmg") return SequenceKind::CPMG;
  if (lower == "udd") return SequenceKind::UDD;
  if (lower == "custom") return SequenceKind::Custom;
  throw ConfigError("unknown sequence kind '" + std::string(name) + "'");
}

int SwitchingPattern::sign_at(double t) const {
  if (!(t >= 0.0 && t <= window)) {
    throw DomainError("switching function evaluated at t=" + std::to_string(t) +
                      " outside [0, " + std::to_string(window) + "]");
  }
  const auto count = std::upper_bound(flips.begin(), flips.end(), t) - flips.begin();
  return (count % 2 == 0) ? initial_sign : -initial_sign;
}

std::size_t SwitchingPattern::flips_before(double t) const {
  return static_cast<std::size_t>(std::lower_bound(flips.begin(), flips.end(), t) - flips.begin());
}

double SwitchingPattern::integral(double t) const {
  if (!(t >= 0.0 && t <= window)) {
    throw DomainError("switching integral requested at t=" + std::to_string(t) +
                      " outside [0, " + std::to_string(window) + "]");
  }
  double total = 0.0;
  double start = 0.0;
  int sign = initial_sign;
  for (double flip : flips) {
    if (flip >= t) break;
    total += sign * (flip - start);
    start = flip;
    sign = -sign;
  }
  total += sign * (t - start);
  return total;
}

namespace {

void check_times(const std::vector<double>& times, double window) {
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw DomainError("pulse window must be positive and finite");
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] > 0.0 && times[k] < window)) {
      throw DomainError("pulse instant " + std::to_string(times[k]) +
                        " is not strictly inside (0, window)");
    }
    if (k > 0 && !(times[k] > times[k - 1])) {
      throw DomainError("pulse instants must be strictly increasing");
    }
  }
}

}  // namespace

PulseSequence::PulseSequence(SequenceKind kind, std::vector<double> times, double window, double shift)
    : kind_(kind), times_(std::move(times)), window_(window), shift_(shift) {
  check_times(times_, window_);
  if (!(shift_ >= 0.0) || !std::isfinite(shift_)) {
    throw DomainError("time shift must be non-negative and finite");
  }
  pattern_.window = window_;
  pattern_.initial_sign = 1;
  pattern_.flips.reserve(times_.size());
  for (double tk : times_) {
    const double moved = tk - shift_;
    if (moved <= 0.0) {
      pattern_.initial_sign = -pattern_.initial_sign;
    } else {
      pattern_.flips.push_back(moved);
    }
  }
}

PulseSequence PulseSequence::make(SequenceKind kind, int n, double window) {
  if (n < 0) throw DomainError("pulse count must be non-negative");
  if (!(window > 0.0)) throw DomainError("pulse window must be positive");
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(n));
  switch (kind) {
    case SequenceKind::Free:
      break;
    case SequenceKind::PDD:
      for (int j = 1; j <= n; ++j) times.push_back(j * window / (n + 1));
      break;
    case SequenceKind::CPMG:
      if (n == 0) throw DomainError("CPMG needs at least one pulse");
      for (int j = 1; j <= n; ++j) times.push_back((j - 0.5) * window / n);
      break;
    case SequenceKind::UDD:
      for (int j = 1; j <= n; ++j) {
        const double s = std::sin(j * std::numbers::pi / (2.0 * n + 2.0));
        times.push_back(window * s * s);
      }
      break;
    case SequenceKind::Custom:
      throw DomainError("custom sequences are built with PulseSequence::custom");
  }
  return PulseSequence(kind, std::move(times), window, 0.0);
}

PulseSequence PulseSequence::custom(std::vector<double> times, double window) {
  return PulseSequence(SequenceKind::Custom, std::move(times), window, 0.0);
}

PulseSequence PulseSequence::shifted(double shift) const {
  return PulseSequence(kind_, times_, window_, shift);
}

int PulseSequence::switching_value(double t) const { return pattern_.sign_at(t); }

double PulseSequence::z_integral(double t) const { return pattern_.integral(t); }

CombinedSwitching combine(const SwitchingPattern& a, const SwitchingPattern& b) {
  if (std::abs(a.window - b.window) > kFlipCoincidenceTolerance * std::max(a.window, b.window)) {
    throw ConfigError("cannot combine switching functions with different windows");
  }
  const double tol = kFlipCoincidenceTolerance * a.window;
  CombinedSwitching out;
  out.window = a.window;
  out.initial_sign = a.initial_sign * b.initial_sign;
  out.flips.reserve(a.flips.size() + b.flips.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.flips.size() || j < b.flips.size()) {
    if (j == b.flips.size()) {
      out.flips.push_back(a.flips[i++]);
    } else if (i == a.flips.size()) {
      out.flips.push_back(b.flips[j++]);
    } else if (std::abs(a.flips[i] - b.flips[j]) <= tol) {
      ++i;
      ++j;
    } else if (a.flips[i] < b.flips[j]) {
      out.flips.push_back(a.flips[i++]);
    } else {
      out.flips.push_back(b.flips[j++]);
    }
  }
  return out;
}

CombinedSwitching combine(const PulseSequence& a, const PulseSequence& b) {
  return combine(a.pattern(), b.pattern());
}

double h_integral(const PulseSequence& a, const PulseSequence& b, double t) {
  return combine(a, b).integral(t);
}

void SequenceSpec::validate() const {
  if (n < 0) throw ConfigError("pulse count n must be non-negative");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be a non-negative number");
  if (kind == SequenceKind::CPMG && n == 0) throw ConfigError("CPMG needs n >= 1");
  if (kind == SequenceKind::Custom) {
    for (std::size_t k = 0; k < custom_fractions.size(); ++k) {
      const double d = custom_fractions[k];
      if (!(d > 0.0 && d < 1.0)) throw ConfigError("custom_times entries must lie strictly inside (0, 1)");
      if (k > 0 && !(d > custom_fractions[k - 1])) {
        throw ConfigError("custom_times must be strictly increasing");
      }
    }
  }
}

PulseSequence SequenceSpec::instantiate(double window) const {
  if (kind != SequenceKind::Custom) return PulseSequence::make(kind, n, window);
  std::vector<double> times;
  times.reserve(custom_fractions.size());
  for (double d : custom_fractions) times.push_back(d * window);
  return PulseSequence::custom(std::move(times), window);
}

PulseSequence SequenceSpec::instantiate_shifted(double window) const {
  return instantiate(window).shifted(alpha);
}

}  // namespace ddent
