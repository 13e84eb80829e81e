#include "ddent/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "ddent/errors.hpp"
#include "ddent/filters.hpp"
#include "ddent/quad.hpp"

namespace ddent {

std::string_view to_string(DynamicsMode mode) {
  return mode == DynamicsMode::CommonBathOnly ? "common" : "noise";
}

DynamicsMode parse_dynamics_mode(std::string_view name) {
  if (name == "common" || name == "common_bath" || name == "CommonBathOnly") return DynamicsMode::CommonBathOnly;
  if (name == "noise" || name == "with_noise" || name == "WithInteractionNoise") {
    return DynamicsMode::WithInteractionNoise;
  }
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected common or noise)");
}

void QuadSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("quadrature tolerances must be positive");
  if (max_panels < 1) throw ConfigError("max_panels must be at least 1");
  if (!(omega_max_factor > 0.0)) throw ConfigError("omega_max_factor must be positive");
}

void ScenarioConfig::validate() const {
  bath.validate();
  quad.validate();
  sequence.validate();
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive");
  if (!std::isfinite(omega0)) throw ConfigError("omega0 must be finite");
  if (!std::isfinite(lambda0)) throw ConfigError("lambda0 must be finite");
  if (mode == DynamicsMode::CommonBathOnly && sequence.alpha != 0.0) {
    throw ConfigError("a time shift alpha requires the noise mode");
  }
  if (mode == DynamicsMode::WithInteractionNoise) {
    if (!noise) throw ConfigError("noise mode requires a noise spectrum");
    noise->validate();
  }
  for (double t : time_grid) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("time grid entries must be non-negative");
  }
}

std::vector<double> linspace(double t_min, double t_max, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {t_min};
  std::vector<double> out(points);
  const double step = (t_max - t_min) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = t_min + static_cast<double>(i) * step;
  out.back() = t_max;
  return out;
}

namespace {

enum BathComponent : std::size_t { kGamma, kD, kP, kQ, kR, kBathComponents };
constexpr const char* kBathNames[kBathComponents] = {"gamma", "D", "p", "q", "r"};

struct BathIntegrand {
  const PairSpectrum& spectrum;
  const BathSpectrum& bath;
  double beta;
  double alpha;

  QuadVec<kBathComponents> sample(double omega, const PairSpectrum::Sample& s) const {
    QuadVec<kBathComponents> v{};
    if (omega <= 0.0) return v;
    const double J = bath_J(bath, omega);
    const double x = 0.5 * std::norm(s.phi1) * J;
    const double nbar = bose_n(beta, omega);
    const double c = std::cos(omega * alpha);
    const double sn = std::sin(omega * alpha);
    v[kGamma] = x * (2.0 * nbar + 1.0);
    v[kD] = J * s.dn_sym;
    v[kP] = x * c * nbar;
    v[kQ] = x * c;
    v[kR] = x * sn;
    return v;
  }

  QuadVec<kBathComponents> operator()(double omega) const { return sample(omega, spectrum.at(omega)); }

  void eval_grid(const PanelGrid& grid, std::span<QuadVec<kBathComponents>> out) const {
    std::size_t i = 0;
    spectrum.sweep(grid, [&](double omega, const PairSpectrum::Sample& s) { out[i++] = sample(omega, s); });
  }
};

struct NoiseIntegrand {
  const PatternSpectrum& spectrum;
  const NoiseSpectrum& noise;

  QuadVec<1> sample(double omega, Complex phi) const {
    return {std::numbers::inv_pi * noise_S(noise, omega) * std::norm(phi)};
  }

  QuadVec<1> operator()(double omega) const { return sample(omega, spectrum.at(omega)); }

  void eval_grid(const PanelGrid& grid, std::span<QuadVec<1>> out) const {
    std::size_t i = 0;
    spectrum.sweep(grid, [&](double omega, Complex phi) { out[i++] = sample(omega, phi); });
  }
};

std::string describe_failure(const char* kernel, double t, double value, double error) {
  std::ostringstream os;
  os << "kernel " << kernel << " did not converge at t=" << t << " (value " << value << ", error estimate "
     << error << ")";
  return os.str();
}

QuadSpec make_spec(const QuadSettings& q, double a, double b, double t) {
  QuadSpec spec;
  spec.a = a;
  spec.b = b;
  spec.rel_tol = q.rel_tol;
  spec.abs_tol = q.abs_tol;
  spec.max_panels = q.max_panels;
  spec.oscillation_period_hint = 2.0 * std::numbers::pi / t;
  return spec;
}

double shift_of(const ScenarioConfig& cfg) {
  return cfg.mode == DynamicsMode::WithInteractionNoise ? cfg.sequence.alpha : 0.0;
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("kernel time must be non-negative, got " + std::to_string(t));
}

// γ, D, p, q, r at one time.
QuadVec<kBathComponents> bath_kernels(const ScenarioConfig& cfg, double t) {
  require_time(t);
  if (t == 0.0 || cfg.bath.g == 0.0) return {};
  const PulseSequence seq1 = cfg.sequence.instantiate(t);
  const double alpha = shift_of(cfg);
  const PulseSequence seq2 = seq1.shifted(alpha);
  const PairSpectrum spectrum(seq1.pattern(), seq2.pattern(), t);
  const BathIntegrand f{spectrum, cfg.bath, cfg.beta, alpha};
  const auto spec = make_spec(cfg.quad, 0.0, cfg.quad.omega_max_factor * cfg.bath.omega_c, t);
  const auto res = integrate_n<kBathComponents>(f, spec);
  if (!res.converged) {
    for (std::size_t k = 0; k < kBathComponents; ++k) {
      if (res.error_estimate[k] > std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value[k]))) {
        throw ConvergenceError(describe_failure(kBathNames[k], t, res.value[k], res.error_estimate[k]));
      }
    }
    throw ConvergenceError(describe_failure("bath", t, res.value[kGamma], res.error_estimate[kGamma]));
  }
  return res.value;
}

}  // namespace

double gamma_kernel(const ScenarioConfig& cfg, double t) { return bath_kernels(cfg, t)[kGamma]; }

double D_kernel(const ScenarioConfig& cfg, double t) { return bath_kernels(cfg, t)[kD]; }

PqrKernels pqr_kernels(const ScenarioConfig& cfg, double t) {
  const auto v = bath_kernels(cfg, t);
  return {v[kP], v[kQ], v[kR]};
}

double mu_kernel(const ScenarioConfig& cfg, double t) {
  require_time(t);
  if (!cfg.noise) throw ConfigError("mu kernel requires a noise spectrum");
  const NoiseSpectrum& noise = *cfg.noise;
  noise.validate();
  if (t == 0.0 || noise.A0 == 0.0) return 0.0;
  const PulseSequence seq1 = cfg.sequence.instantiate(t);
  const PulseSequence seq2 = seq1.shifted(shift_of(cfg));
  const PatternSpectrum spectrum(combine(seq1, seq2), t);
  const NoiseIntegrand f{spectrum, noise};
  const auto spec = make_spec(cfg.quad, noise.omega_ir, noise.omega_uv, t);
  const auto res = integrate_n<1>(f, spec);
  if (!res.converged) throw ConvergenceError(describe_failure("mu", t, res.value[0], res.error_estimate[0]));
  return res.value[0];
}

KernelSet compute_kernels(const ScenarioConfig& cfg, double t) {
  require_time(t);
  KernelSet k;
  k.t = t;
  if (t == 0.0) return k;
  const PulseSequence seq1 = cfg.sequence.instantiate(t);
  const PulseSequence seq2 = seq1.shifted(shift_of(cfg));
  k.Z = seq1.z_integral(t);
  k.h = h_integral(seq1, seq2, t);
  const auto bath = bath_kernels(cfg, t);
  k.gamma = bath[kGamma];
  k.D = bath[kD];
  if (cfg.mode == DynamicsMode::WithInteractionNoise) {
    k.p = bath[kP];
    k.q = bath[kQ];
    k.r = bath[kR];
    k.mu = mu_kernel(cfg, t);
    k.Phi = 0.5 * k.D - cfg.lambda0 * k.h;
  } else {
    k.Phi = 0.5 * k.D;
  }
  return k;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex lock;
  std::size_t failed_index = count;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(lock);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<KernelSet> compute_kernels_grid(const ScenarioConfig& cfg, const std::vector<double>& times,
                                            unsigned threads) {
  cfg.validate();
  std::vector<KernelSet> out(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) { out[i] = compute_kernels(cfg, times[i]); });
  return out;
}

}  // namespace ddent
