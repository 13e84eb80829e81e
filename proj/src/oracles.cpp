#include "ddent/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "ddent/errors.hpp"
#include "ddent/filters.hpp"

namespace ddent {

SynthesisGrid make_synthesis_grid(const NoiseSpectrum& spec, std::size_t modes) {
  spec.validate();
  if (modes == 0) throw ConfigError("synthesis needs at least one mode");
  SynthesisGrid grid;
  grid.omegas.resize(modes);
  grid.amplitudes.resize(modes);
  const double log_ratio = std::log(spec.omega_uv / spec.omega_ir);
  const double m = static_cast<double>(modes);
  for (std::size_t j = 0; j < modes; ++j) {
    const double jd = static_cast<double>(j);
    const double lo = spec.omega_ir * std::exp(log_ratio * jd / m);
    const double hi = spec.omega_ir * std::exp(log_ratio * (jd + 1.0) / m);
    const double w = spec.omega_ir * std::exp(log_ratio * (jd + 0.5) / m);
    grid.omegas[j] = w;
    grid.amplitudes[j] = std::sqrt(noise_S(spec, w) * (hi - lo) * std::numbers::inv_pi);
  }
  return grid;
}

std::uint64_t realization_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

NoiseRealization sample_noise(const NoiseSpectrum& spec, const UniformGrid& grid, std::uint64_t seed,
                              std::size_t modes) {
  if (grid.count > 1 && !(grid.dt > 0.0)) throw ConfigError("noise grid step must be positive");
  if (grid.count > 1 && spec.omega_uv * grid.dt > std::numbers::pi) {
    throw ConfigError("noise grid step " + std::to_string(grid.dt) + " violates the Nyquist limit of omega_uv");
  }
  NoiseRealization out;
  out.grid = grid;
  out.seed = seed;
  out.synthesis = make_synthesis_grid(spec, modes);
  out.values.assign(grid.count, 0.0);
  std::mt19937_64 rng(realization_seed(seed, 0));
  std::normal_distribution<double> normal;
  for (std::size_t j = 0; j < modes; ++j) {
    const double a = normal(rng);
    const double b = normal(rng);
    const double amp = out.synthesis.amplitudes[j];
    const double w = out.synthesis.omegas[j];
    for (std::size_t i = 0; i < grid.count; ++i) {
      const double t = grid.t0 + static_cast<double>(i) * grid.dt;
      out.values[i] += amp * (a * std::cos(w * t) + b * std::sin(w * t));
    }
  }
  return out;
}

namespace {

// Trapezoid value of ∫_0^t f_c(τ) e^{iωτ} dτ for every synthesis mode; each
// sign-constant segment gets its own uniform sub-grid.
std::vector<Complex> trapezoid_weights(const SwitchingPattern& fc, double t, const SynthesisGrid& grid,
                                       double max_step) {
  const auto c = detail::clip(fc, t);
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), c.flips.begin(), c.flips.end());
  edges.push_back(t);
  std::vector<Complex> out(grid.omegas.size());
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double a = edges[s];
    const double b = edges[s + 1];
    const double len = b - a;
    if (len <= 0.0) continue;
    const double steps = std::max(1.0, std::ceil(len / max_step));
    const double h = len / steps;
    const double sign = (s % 2 == 0) ? c.sigma : -c.sigma;
    for (std::size_t j = 0; j < grid.omegas.size(); ++j) {
      const double w = grid.omegas[j];
      const double half = 0.5 * w * h;
      // Uniform trapezoid sum of e^{iωτ} over [a, b] in closed form.
      const double scale = h * (half == 0.0 ? 1.0 : half / std::tan(half)) * std::sin(0.5 * w * len) / half;
      out[j] += sign * scale * std::polar(1.0, 0.5 * w * (a + b));
    }
  }
  return out;
}

SwitchingPattern combined_at(const ScenarioConfig& cfg, double t) {
  const PulseSequence seq1 = cfg.sequence.instantiate(t);
  return combine(seq1, seq1.shifted(cfg.sequence.alpha));
}

}  // namespace

double synthesis_gamma_variance(const ScenarioConfig& cfg, double t, const McOptions& options) {
  if (!cfg.noise) throw ConfigError("Monte-Carlo noise needs a noise spectrum");
  if (!(t > 0.0)) return 0.0;
  const auto grid = make_synthesis_grid(*cfg.noise, options.modes);
  const auto weights = trapezoid_weights(combined_at(cfg, t), t, grid, options.phase_step / cfg.noise->omega_uv);
  double v = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) v += grid.amplitudes[j] * grid.amplitudes[j] * std::norm(weights[j]);
  return v;
}

McStatistics mc_gamma_variance(const ScenarioConfig& cfg, double t, const McOptions& options) {
  if (cfg.mode != DynamicsMode::WithInteractionNoise || !cfg.noise) {
    throw ConfigError("Monte-Carlo noise needs the noise mode with a noise spectrum");
  }
  if (options.realizations < 2) throw ConfigError("Monte-Carlo needs at least two realizations");
  if (!(options.phase_step > 0.0)) throw ConfigError("phase_step must be positive");
  const auto grid = make_synthesis_grid(*cfg.noise, options.modes);
  const std::size_t modes = grid.omegas.size();
  std::vector<double> wc(modes);
  std::vector<double> ws(modes);
  if (t > 0.0) {
    const auto weights = trapezoid_weights(combined_at(cfg, t), t, grid, options.phase_step / cfg.noise->omega_uv);
    for (std::size_t j = 0; j < modes; ++j) {
      wc[j] = grid.amplitudes[j] * weights[j].real();
      ws[j] = grid.amplitudes[j] * weights[j].imag();
    }
  }
  std::vector<double> gammas(options.realizations);
  parallel_for(options.realizations, options.threads, [&](std::size_t i) {
    std::mt19937_64 rng(realization_seed(options.seed, i));
    std::normal_distribution<double> normal;
    double acc = 0.0;
    for (std::size_t j = 0; j < modes; ++j) {
      const double a = normal(rng);
      const double b = normal(rng);
      acc += a * wc[j] + b * ws[j];
    }
    gammas[i] = acc;
  });

  const double n = static_cast<double>(options.realizations);
  McStatistics st;
  st.realizations = options.realizations;
  double sum = 0.0;
  for (double g : gammas) sum += g;
  st.mean = sum / n;
  double m2 = 0.0;
  double m4 = 0.0;
  double c2 = 0.0;
  double c2sq = 0.0;
  double s2 = 0.0;
  double s2sq = 0.0;
  for (double g : gammas) {
    const double d = g - st.mean;
    m2 += d * d;
    m4 += d * d * d * d;
    const double cs = std::cos(2.0 * g);
    const double sn = std::sin(2.0 * g);
    c2 += cs;
    c2sq += cs * cs;
    s2 += sn;
    s2sq += sn * sn;
  }
  const double pop_var = m2 / n;
  m4 /= n;
  st.variance = m2 / (n - 1.0);
  st.mean_se = std::sqrt(st.variance / n);
  st.variance_se = std::sqrt(std::max(m4 - pop_var * pop_var, 0.0) / n);
  st.kurtosis = pop_var > 0.0 ? m4 / (pop_var * pop_var) : 0.0;
  st.kurtosis_se = std::sqrt(24.0 / n);
  st.cos2_mean = c2 / n;
  st.cos2_se = std::sqrt(std::max(c2sq / n - st.cos2_mean * st.cos2_mean, 0.0) / n);
  st.sin2_mean = s2 / n;
  st.sin2_se = std::sqrt(std::max(s2sq / n - st.sin2_mean * st.sin2_mean, 0.0) / n);
  return st;
}

void DiscreteModeBath::validate() const {
  if (modes.empty() || modes.size() > 3) throw ConfigError("discrete bath needs one to three modes");
  if (levels < 1) throw ConfigError("Fock cutoff must be at least 1");
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  for (const auto& m : modes) {
    if (!(m.omega > 0.0)) throw ConfigError("mode frequency must be positive");
  }
}

namespace {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

struct ModeSpace {
  std::size_t levels;
  std::size_t dim;
  std::vector<std::vector<std::size_t>> occupation;  // per basis state, per mode
};

ModeSpace make_space(const DiscreteModeBath& bath) {
  ModeSpace s{bath.levels + 1, 1, {}};
  for (std::size_t m = 0; m < bath.modes.size(); ++m) s.dim *= s.levels;
  s.occupation.resize(s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) {
    std::size_t rest = i;
    s.occupation[i].resize(bath.modes.size());
    for (std::size_t m = bath.modes.size(); m-- > 0;) {
      s.occupation[i][m] = rest % s.levels;
      rest /= s.levels;
    }
  }
  return s;
}

// Σ ω n + ε Σ g (b + b†)
RealMatrix bath_hamiltonian(const DiscreteModeBath& bath, const ModeSpace& space, double eps) {
  RealMatrix h = RealMatrix::Zero(static_cast<Eigen::Index>(space.dim), static_cast<Eigen::Index>(space.dim));
  std::vector<std::size_t> stride(bath.modes.size(), 1);
  for (std::size_t m = bath.modes.size(); m-- > 1;) stride[m - 1] = stride[m] * space.levels;
  for (std::size_t i = 0; i < space.dim; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (std::size_t m = 0; m < bath.modes.size(); ++m) {
      const std::size_t n = space.occupation[i][m];
      h(ii, ii) += bath.modes[m].omega * static_cast<double>(n);
      if (n + 1 < space.levels) {
        const auto jj = static_cast<Eigen::Index>(i + stride[m]);
        const double v = eps * bath.modes[m].g * std::sqrt(static_cast<double>(n + 1));
        h(ii, jj) += v;
        h(jj, ii) += v;
      }
    }
  }
  return h;
}

}  // namespace

TwoQubitState single_mode_evolve(const DiscreteModeBath& bath, const SwitchingPattern& s1, const SwitchingPattern& s2,
                                 double omega0, double t, const TwoQubitState& rho0) {
  bath.validate();
  const auto space = make_space(bath);
  const auto dim = static_cast<Eigen::Index>(space.dim);

  Eigen::VectorXd thermal(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double e = 0.0;
    for (std::size_t m = 0; m < bath.modes.size(); ++m) {
      e += bath.modes[m].omega * static_cast<double>(space.occupation[static_cast<std::size_t>(i)][m]);
    }
    thermal(i) = std::exp(-bath.beta * e);
  }
  thermal /= thermal.sum();

  std::map<int, Eigen::SelfAdjointEigenSolver<RealMatrix>> solvers;
  auto solver_for = [&](int eps) -> const Eigen::SelfAdjointEigenSolver<RealMatrix>& {
    auto it = solvers.find(eps);
    if (it == solvers.end()) {
      it = solvers.emplace(eps, Eigen::SelfAdjointEigenSolver<RealMatrix>(bath_hamiltonian(bath, space, eps))).first;
    }
    return it->second;
  };

  const auto c1 = detail::clip(s1, t);
  const auto c2 = detail::clip(s2, t);
  std::vector<double> edges{0.0};
  std::merge(c1.flips.begin(), c1.flips.end(), c2.flips.begin(), c2.flips.end(), std::back_inserter(edges));
  edges.push_back(t);

  std::array<ComplexMatrix, 4> propagators;
  for (std::size_t idx = 0; idx < 4; ++idx) {
    const int k = kBasisK[idx];
    const int l = kBasisL[idx];
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
      const double a = edges[s];
      const double b = edges[s + 1];
      if (b <= a) continue;
      const double mid = 0.5 * (a + b);
      const int sign1 = s1.sign_at(mid);
      const int sign2 = s2.sign_at(mid);
      const int eps = k * sign1 + l * sign2;
      const auto& es = solver_for(eps);
      const double dt = b - a;
      Eigen::VectorXcd phases(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        phases(i) = std::polar(1.0, -(es.eigenvalues()(i) + 0.5 * omega0 * eps) * dt);
      }
      const ComplexMatrix v = es.eigenvectors().cast<Complex>();
      u = (v * phases.asDiagonal() * v.transpose()) * u;
    }
    // Truncation check on the top Fock level of any mode.
    const ComplexMatrix evolved = u * thermal.asDiagonal() * u.adjoint();
    double tail = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto& occ = space.occupation[static_cast<std::size_t>(i)];
      if (std::any_of(occ.begin(), occ.end(), [&](std::size_t n) { return n + 1 == space.levels; })) {
        tail += evolved(i, i).real();
      }
    }
    if (tail > kFockTailLimit) {
      throw IntegrityError("Fock truncation too small: top-level population " + std::to_string(tail) +
                           "; rerun with more levels");
    }
    propagators[idx] = std::move(u);
  }

  // The qubit splitting is carried by eps above only through the coupling
  // sign pattern; its own phase follows k s1 + l s2 as well.
  Matrix4 out;
  for (std::size_t row = 0; row < 4; ++row)
    for (std::size_t col = 0; col < 4; ++col) {
      const ComplexMatrix& ur = propagators[row];
      const ComplexMatrix& uc = propagators[col];
      const Complex overlap = (ur * thermal.asDiagonal() * uc.adjoint()).trace();
      out(row, col) = rho0(row, col) * overlap;
    }
  return TwoQubitState(out.hermitian_part());
}

KernelSet discrete_mode_kernels(const DiscreteModeBath& bath, const SwitchingPattern& s1, const SwitchingPattern& s2,
                                double t, double dn_sign) {
  bath.validate();
  KernelSet k;
  k.t = t;
  if (t == 0.0) return k;
  k.Z = s1.integral(t);
  k.h = combine(s1, s2).integral(t);
  for (const auto& m : bath.modes) {
    const double weight = 4.0 * m.g * m.g;
    k.gamma += weight * filter_F_over_omega_sq(s1, m.omega, t) * thermal_coth(bath.beta, m.omega);
    k.D += weight * 0.5 * (dn_closed(s1, s2, m.omega, t) + dn_closed(s2, s1, m.omega, t));
    const Complex cross = phi(s1, m.omega, t) * std::conj(phi(s2, m.omega, t));
    k.q += weight * 0.5 * cross.real();
    k.p += weight * 0.5 * cross.real() * bose_n(bath.beta, m.omega);
    k.r += weight * 0.5 * cross.imag();
  }
  k.D *= dn_sign;
  k.Phi = 0.5 * k.D;
  return k;
}

double ohmic_D_time_domain(const BathSpectrum& bath, const SwitchingPattern& s1, const SwitchingPattern& s2, double t) {
  if (bath.ohmicity != 1.0 || bath.cutoff != CutoffKind::Exponential) {
    throw ConfigError("time-domain D oracle needs an Ohmic exponential-cutoff bath");
  }
  auto steps = [t](const SwitchingPattern& s) {
    const auto c = detail::clip(s, t);
    std::vector<std::pair<double, double>> out{{0.0, static_cast<double>(c.sigma)}};
    double sign = c.sigma;
    for (double x : c.flips) {
      out.emplace_back(x, -2.0 * sign);
      sign = -sign;
    }
    return out;
  };
  auto G = [&](double tau) { return bath.g * (bath.omega_c * tau - std::atan(bath.omega_c * tau)); };
  auto d12 = [&](const auto& a, const auto& b) {
    double total = 0.0;
    for (const auto& [tk, ck] : a)
      for (const auto& [tl, cl] : b) {
        double term = G(t - tl);
        if (tk > tl) term -= G(tk - tl);
        total += ck * cl * term;
      }
    return total;
  };
  const auto a = steps(s1);
  const auto b = steps(s2);
  return 0.5 * (d12(a, b) + d12(b, a));
}

}  // namespace ddent
