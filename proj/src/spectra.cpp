#include "ddent/spectra.hpp"

#include <cmath>
#include <string>

#include "ddent/errors.hpp"

namespace ddent {

void BathSpectrum::validate() const {
  if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("bath coupling g must be >= 0");
  if (!(ohmicity > 0.0)) throw ConfigError("ohmicity must be > 0");
  if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw ConfigError("omega_c must be > 0");
}

void NoiseSpectrum::validate() const {
  if (!(A0 >= 0.0) || !std::isfinite(A0)) throw ConfigError("noise amplitude A0 must be >= 0");
  if (!(a >= 0.5 && a <= 1.5)) throw ConfigError("noise exponent a must lie in [0.5, 1.5]");
  if (!(omega_ir > 0.0)) throw ConfigError("omega_ir must be > 0");
  if (!(omega_uv > omega_ir) || !std::isfinite(omega_uv)) {
    throw ConfigError("omega_uv must be finite and exceed omega_ir");
  }
}

double bath_J(const BathSpectrum& spec, double omega) {
  if (!(omega >= 0.0)) throw DomainError("bath_J needs omega >= 0, got " + std::to_string(omega));
  if (omega == 0.0) return 0.0;
  const double power = spec.ohmicity == 1.0 ? omega
                                            : std::pow(omega, spec.ohmicity) /
                                                  std::pow(spec.omega_c, spec.ohmicity - 1.0);
  switch (spec.cutoff) {
    case CutoffKind::Exponential:
      return spec.g * power * std::exp(-omega / spec.omega_c);
  }
  return 0.0;
}

double noise_S(const NoiseSpectrum& spec, double omega) {
  const double w = std::abs(omega);
  if (w < spec.omega_ir || w > spec.omega_uv) return 0.0;
  return std::pow(spec.A0, 1.0 + spec.a) / std::pow(w, spec.a);
}

double thermal_coth(double beta, double omega) {
  if (!(beta > 0.0)) throw DomainError("inverse temperature must be > 0");
  if (!(omega > 0.0)) throw DomainError("thermal_coth needs omega > 0");
  return 1.0 / std::tanh(0.5 * beta * omega);
}

double bose_n(double beta, double omega) {
  if (!(beta > 0.0)) throw DomainError("inverse temperature must be > 0");
  if (!(omega > 0.0)) throw DomainError("bose_n needs omega > 0");
  return 1.0 / std::expm1(beta * omega);
}

}  // namespace ddent
