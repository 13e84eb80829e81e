#include "ddent/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddent/errors.hpp"

namespace ddent {

namespace {

bool use_series(double omega, double t) { return std::abs(omega) * t < kSmallOmegaT; }
bool use_dn_series(double omega, double t) { return std::abs(omega) * t < kDnSeriesOmegaT; }

void require_positive(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("dn requires a positive finite frequency, got " + std::to_string(omega));
  }
}

struct Segment {
  double a;
  double b;
  int s1;
  int s2;
};

// Sign-constant segments of a clipped pair on [0, t].
std::vector<Segment> merged_segments(const detail::Clipped& c1, const detail::Clipped& c2) {
  std::vector<Segment> out;
  out.reserve(c1.flips.size() + c2.flips.size() + 1);
  std::size_t i = 0;
  std::size_t j = 0;
  double start = 0.0;
  int s1 = c1.sigma;
  int s2 = c2.sigma;
  while (i < c1.flips.size() || j < c2.flips.size()) {
    const double x1 = i < c1.flips.size() ? c1.flips[i] : c1.t;
    const double x2 = j < c2.flips.size() ? c2.flips[j] : c2.t;
    const double x = std::min(x1, x2);
    if (x > start) out.push_back({start, x, s1, s2});
    if (x1 <= x) {
      s1 = -s1;
      ++i;
    }
    if (x2 <= x) {
      s2 = -s2;
      ++j;
    }
    start = x;
  }
  if (c1.t > start) out.push_back({start, c1.t, s1, s2});
  return out;
}

// y − sin y without cancellation for small y.
double y_minus_sin(double y) {
  if (std::abs(y) < 0.25) {
    const double y2 = y * y;
    return y * y2 * (1.0 / 6.0 - y2 * (1.0 / 120.0 - y2 * (1.0 / 5040.0 - y2 * (1.0 / 362880.0 - y2 / 39916800.0))));
  }
  return y - std::sin(y);
}

}  // namespace

namespace detail {

Clipped clip(const SwitchingPattern& s, double t) {
  if (!(t >= 0.0 && t <= s.window)) {
    throw DomainError("evaluation time " + std::to_string(t) + " outside [0, " + std::to_string(s.window) + "]");
  }
  const std::size_t m = s.flips_before(t);
  return {s.initial_sign, std::span<const double>(s.flips.data(), m), t};
}

Complex phi_from_phases(const Clipped& s, std::span<const Complex> phases, Complex end_phase, double omega) {
  Complex acc{-1.0, 0.0};
  double sign = 2.0;
  for (const Complex& e : phases) {
    acc += sign * e;
    sign = -sign;
  }
  acc += (phases.size() % 2 == 0 ? 1.0 : -1.0) * end_phase;
  // σ/(iω) · acc = −iσ acc / ω
  return Complex(acc.imag(), -acc.real()) * (s.sigma / omega);
}

double theta_nu_from_phases(const Clipped& s, std::span<const Complex> phases, Complex end_phase, double omega) {
  const std::size_t n = phases.size();
  const double w2 = omega * omega;
  double theta = 0.0;
  double parity = -1.0;
  for (std::size_t m = 0; m < n; ++m) {
    theta -= 2.0 * parity * phases[m].imag();
    parity = -parity;
  }
  theta += (n % 2 == 0 ? 1.0 : -1.0) * end_phase.imag();
  theta /= w2;

  double nu = 0.0;
  Complex prefix{};
  parity = -1.0;
  for (std::size_t m = 0; m < n; ++m) {
    prefix += parity * std::conj(phases[m]);
    const Complex next = (m + 1 < n) ? phases[m + 1] : end_phase;
    nu += parity * cmul(next - phases[m], prefix).imag();
    parity = -parity;
  }
  nu *= 2.0 / w2;
  return theta + nu - s.t / omega;
}

double dn_cross_from_phases(const Clipped& s1, std::span<const Complex> phases1, const Clipped& s2,
                            std::span<const Complex> phases2, Complex end_phase, double omega, double h) {
  const Complex phi_t = phi_from_phases(s1, phases1, end_phase, omega);
  const double scale = s1.sigma / omega;
  Complex partial{-1.0, 0.0};
  double weight = 2.0;
  std::size_t k = 0;
  double sum = 0.0;
  double parity = -1.0;
  for (std::size_t j = 0; j < phases2.size(); ++j) {
    const double u = s2.flips[j];
    while (k < s1.flips.size() && s1.flips[k] < u) {
      partial += weight * phases1[k];
      weight = -weight;
      ++k;
    }
    const Complex e = phases2[j];
    const Complex bracket = partial + (k % 2 == 0 ? 1.0 : -1.0) * e;
    const Complex phi_u = Complex(bracket.imag(), -bracket.real()) * scale;
    sum += parity * cmul(std::conj(e), phi_t - phi_u).real();
    parity = -parity;
  }
  return (h - s2.sigma * phi_t.real() - 2.0 * s2.sigma * sum) / omega;
}

std::array<double, 4> phi_moments(const Clipped& s) {
  std::array<double, 4> m{};
  double start = 0.0;
  int sign = s.sigma;
  auto add = [&](double a, double b) {
    double pa = a;
    double pb = b;
    for (std::size_t k = 0; k < 4; ++k) {
      m[k] += sign * (pb - pa) / static_cast<double>(k + 1);
      pa *= a;
      pb *= b;
    }
  };
  for (double x : s.flips) {
    add(start, x);
    start = x;
    sign = -sign;
  }
  add(start, s.t);
  return m;
}

Complex phi_series(const std::array<double, 4>& moments, double omega) {
  const double w2 = omega * omega;
  return {moments[0] - 0.5 * w2 * moments[2], omega * moments[1] - w2 * omega * moments[3] / 6.0};
}

std::array<double, 4> dn_moments(const Clipped& s1, const Clipped& s2) {
  constexpr int kMaxPow = 10;
  double binom[8][8] = {};
  for (int k = 0; k < 8; ++k) {
    binom[k][0] = 1.0;
    for (int i = 1; i <= k; ++i) binom[k][i] = binom[k - 1][i - 1] + (i < k ? binom[k - 1][i] : 0.0);
  }
  std::array<double, 8> m{};  // ∫_0^a s2 τ^i dτ
  std::array<double, 4> out{};
  for (const Segment& seg : merged_segments(s1, s2)) {
    double pa[kMaxPow + 1];
    double pb[kMaxPow + 1];
    pa[0] = pb[0] = 1.0;
    for (int p = 1; p <= kMaxPow; ++p) {
      pa[p] = pa[p - 1] * seg.a;
      pb[p] = pb[p - 1] * seg.b;
    }
    for (int idx = 0; idx < 4; ++idx) {
      const int k = 2 * idx + 1;
      double acc = 0.0;
      for (int i = 0; i <= k; ++i) {
        const int q = k - i + 1;
        const double base = m[i] - seg.s2 * pa[i + 1] / (i + 1);
        const double term = base * (pb[q] - pa[q]) / q + seg.s2 * (pb[k + 2] - pa[k + 2]) / ((i + 1) * (k + 2.0));
        acc += ((i % 2 == 0) ? 1.0 : -1.0) * binom[k][i] * term;
      }
      out[idx] += seg.s1 * acc;
    }
    for (int i = 0; i < 8; ++i) m[i] += seg.s2 * (pb[i + 1] - pa[i + 1]) / (i + 1);
  }
  return out;
}

double dn_series(const std::array<double, 4>& moments, double omega) {
  const double w2 = omega * omega;
  return omega * (moments[0] - w2 * (moments[1] / 6.0 - w2 * (moments[2] / 120.0 - w2 * moments[3] / 5040.0)));
}

}  // namespace detail

void PhaseTable::fill(double omega, std::span<Complex> out) const {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    const double arg = omega * x_[k];
    out[k] = {std::cos(arg), std::sin(arg)};
  }
}

namespace {

std::vector<Complex> phases_of(std::span<const double> xs, double omega) {
  std::vector<Complex> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) out[k] = std::polar(1.0, omega * xs[k]);
  return out;
}

}  // namespace

Complex phi(const SwitchingPattern& s, double omega, double t) {
  const auto c = detail::clip(s, t);
  if (use_series(omega, t)) return detail::phi_series(detail::phi_moments(c), omega);
  // Σ_k s_k (e^{iωb_k} − e^{iωa_k})/(iω) regrouped per segment.
  Complex total{};
  double start = 0.0;
  double sign = c.sigma;
  auto segment = [&](double b) {
    total += std::polar(sign * 2.0 * std::sin(0.5 * omega * (b - start)) / omega, 0.5 * omega * (start + b));
    start = b;
    sign = -sign;
  };
  for (double x : c.flips) segment(x);
  segment(t);
  return total;
}

Complex phi(const PulseSequence& seq, double omega, double t) { return phi(seq.pattern(), omega, t); }

Complex phi_direct(const SwitchingPattern& s, double omega, double t) {
  const auto c = detail::clip(s, t);
  const auto unit = gk15::unit_offsets();
  Complex total{};
  auto segment = [&](double a, double b, int sign) {
    const auto pieces = static_cast<std::size_t>(std::ceil(std::abs(omega) * (b - a))) + 1;
    const double h = (b - a) / static_cast<double>(pieces);
    for (std::size_t p = 0; p < pieces; ++p) {
      const double lo = a + static_cast<double>(p) * h;
      Complex acc{};
      for (std::size_t j = 0; j < gk15::kNodes; ++j) {
        acc += gk15::kronrod_weight(j) * std::polar(1.0, omega * (lo + unit[j] * h));
      }
      total += static_cast<double>(sign) * 0.5 * h * acc;
    }
  };
  double start = 0.0;
  int sign = c.sigma;
  for (double x : c.flips) {
    segment(start, x, sign);
    start = x;
    sign = -sign;
  }
  segment(start, t, sign);
  return total;
}

double filter_F(const SwitchingPattern& s, double omega, double t) {
  return 0.5 * omega * omega * std::norm(phi(s, omega, t));
}

double filter_F(const PulseSequence& seq, double omega, double t) { return filter_F(seq.pattern(), omega, t); }

double filter_F_over_omega_sq(const SwitchingPattern& s, double omega, double t) {
  return 0.5 * std::norm(phi(s, omega, t));
}

double filter_combined(const CombinedSwitching& c, double omega, double t) { return filter_F(c, omega, t); }

FilterEvaluation evaluate_filter(const SwitchingPattern& s, double omega, double t, FilterProvenance provenance) {
  FilterEvaluation out;
  out.omega = omega;
  out.t = t;
  out.provenance = provenance;
  out.phi = provenance == FilterProvenance::ClosedForm ? phi(s, omega, t) : phi_direct(s, omega, t);
  out.F = 0.5 * omega * omega * std::norm(out.phi);
  return out;
}

double dn_theta_nu(const SwitchingPattern& s, double omega, double t) {
  require_positive(omega);
  const auto c = detail::clip(s, t);
  const auto ph = phases_of(c.flips, omega);
  return detail::theta_nu_from_phases(c, ph, std::polar(1.0, omega * t), omega);
}

double dn_closed(const SwitchingPattern& s1, const SwitchingPattern& s2, double omega, double t) {
  require_positive(omega);
  // Im ∫ s1(t1) e^{iωt1} conj(φ2(t1)) dt1 accumulated segment by segment,
  // with ∫_a^b e^{iωτ} dτ = e^{iωm} 2 sin(ωL/2)/ω.
  Complex phi2{};
  double total = 0.0;
  for (const Segment& seg : merged_segments(detail::clip(s1, t), detail::clip(s2, t))) {
    const double len = seg.b - seg.a;
    const Complex e = std::polar(2.0 * std::sin(0.5 * omega * len) / omega, 0.5 * omega * (seg.a + seg.b));
    total += seg.s1 * ((std::conj(phi2) * e).imag() + seg.s2 * y_minus_sin(omega * len) / (omega * omega));
    phi2 += static_cast<double>(seg.s2) * e;
  }
  return total;
}

double dn_closed(const PulseSequence& s1, const PulseSequence& s2, double omega, double t) {
  return dn_closed(s1.pattern(), s2.pattern(), omega, t);
}

double dn_direct(const SwitchingPattern& s1, const SwitchingPattern& s2, double omega, double t) {
  require_positive(omega);
  const auto segs = merged_segments(detail::clip(s1, t), detail::clip(s2, t));
  // Off-diagonal cell (i, j < i): ∫∫ sin ω(t1 − t2) = f_i f_j sin ω(m_i − m_j)
  // with f = 2 sin(ωL/2)/ω and m the segment midpoint. Diagonal cells are
  // (ωL − sin ωL)/ω².
  std::vector<double> f(segs.size());
  std::vector<double> m(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    f[i] = 2.0 * std::sin(0.5 * omega * (segs[i].b - segs[i].a)) / omega;
    m[i] = 0.5 * (segs[i].a + segs[i].b);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < i; ++j) row += segs[j].s2 * f[j] * std::sin(omega * (m[i] - m[j]));
    row *= f[i];
    row += segs[i].s2 * y_minus_sin(omega * (segs[i].b - segs[i].a)) / (omega * omega);
    total += segs[i].s1 * row;
  }
  return total;
}

double dn_direct(const PulseSequence& s1, const PulseSequence& s2, double omega, double t) {
  return dn_direct(s1.pattern(), s2.pattern(), omega, t);
}

PatternSpectrum::PatternSpectrum(SwitchingPattern s, double t)
    : pattern_(std::move(s)), clipped_(detail::clip(pattern_, t)), table_(std::vector<double>{}) {
  std::vector<double> instants(clipped_.flips.begin(), clipped_.flips.end());
  instants.push_back(t);
  table_ = PhaseTable(std::move(instants));
  moments_ = detail::phi_moments(clipped_);
}

Complex PatternSpectrum::at(double omega) const {
  std::vector<Complex> ph(table_.size());
  table_.fill(omega, ph);
  return from_phases(omega, ph);
}

Complex PatternSpectrum::from_phases(double omega, std::span<const Complex> phases) const {
  if (use_series(omega, clipped_.t)) return detail::phi_series(moments_, omega);
  const std::size_t m = clipped_.flips.size();
  return detail::phi_from_phases(clipped_, phases.first(m), phases[m], omega);
}

PairSpectrum::PairSpectrum(SwitchingPattern s1, SwitchingPattern s2, double t)
    : s1_(std::move(s1)),
      s2_(std::move(s2)),
      c1_(detail::clip(s1_, t)),
      c2_(detail::clip(s2_, t)),
      identical_(s1_ == s2_),
      table_(std::vector<double>{}) {
  h_ = combine(s1_, s2_).integral(t);
  std::vector<double> instants(c1_.flips.begin(), c1_.flips.end());
  if (!identical_) instants.insert(instants.end(), c2_.flips.begin(), c2_.flips.end());
  instants.push_back(t);
  table_ = PhaseTable(std::move(instants));
  phi_moments_ = detail::phi_moments(c1_);
  const auto a12 = detail::dn_moments(c1_, c2_);
  if (identical_) {
    dn_moments_ = a12;
  } else {
    const auto a21 = detail::dn_moments(c2_, c1_);
    for (std::size_t k = 0; k < 4; ++k) dn_moments_[k] = 0.5 * (a12[k] + a21[k]);
  }
}

PairSpectrum::Sample PairSpectrum::at(double omega) const {
  std::vector<Complex> ph(table_.size());
  table_.fill(omega, ph);
  return from_phases(omega, ph);
}

PairSpectrum::Sample PairSpectrum::from_phases(double omega, std::span<const Complex> phases) const {
  Sample out;
  const std::size_t n1 = c1_.flips.size();
  const auto ph1 = phases.first(n1);
  const Complex end = phases.back();
  out.phi1 = use_series(omega, c1_.t) ? detail::phi_series(phi_moments_, omega)
                                      : detail::phi_from_phases(c1_, ph1, end, omega);
  if (use_dn_series(omega, c1_.t)) {
    out.dn_sym = detail::dn_series(dn_moments_, omega);
  } else if (identical_) {
    out.dn_sym = kDnClosedFormSign * detail::theta_nu_from_phases(c1_, ph1, end, omega);
  } else {
    const auto ph2 = phases.subspan(n1, c2_.flips.size());
    const double d12 = detail::dn_cross_from_phases(c1_, ph1, c2_, ph2, end, omega, h_);
    const double d21 = detail::dn_cross_from_phases(c2_, ph2, c1_, ph1, end, omega, h_);
    out.dn_sym = 0.5 * (d12 + d21);
  }
  return out;
}

}  // namespace ddent
