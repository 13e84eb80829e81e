#include "ddent/dynamics.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "ddent/entanglement.hpp"
#include "ddent/errors.hpp"

namespace ddent {

std::size_t basis_index(int k, int l) {
  if ((k != 1 && k != -1) || (l != 1 && l != -1)) {
    throw DomainError("quantum numbers must be +1 or -1, got (" + std::to_string(k) + ", " + std::to_string(l) + ")");
  }
  return static_cast<std::size_t>((k == 1 ? 0 : 2) + (l == 1 ? 0 : 1));
}

TwoQubitState::TwoQubitState(const Matrix4& m) : m_(m) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        throw IntegrityError("state has a non-finite entry");
      }
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermiticityTolerance) {
        throw IntegrityError("state is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw IntegrityError("state trace is " + std::to_string(tr.real()) + " instead of 1");
  }
  const double low = min_eigenvalue();
  if (low < -kPositivityTolerance) {
    throw IntegrityError("state has negative eigenvalue " + std::to_string(low));
  }
}

double TwoQubitState::purity() const { return (m_ * m_).trace().real(); }

double TwoQubitState::min_eigenvalue() const { return hermitian_eigen(m_.hermitian_part()).eigenvalues[3]; }

TwoQubitState plus_plus_state() {
  Matrix4 m;
  for (auto& z : m.a) z = 0.25;
  return TwoQubitState(m);
}

Complex evolution_factor(int k, int l, int kp, int lp, const KernelSet& kernels, DynamicsMode mode, double omega0) {
  basis_index(k, l);
  basis_index(kp, lp);
  const double sum = kp + lp - k - l;
  const double dkl = kp * lp - k * l;
  const double dk = kp - k;
  const double dl = lp - l;
  double re = 0.0;
  double im = -0.5 * omega0 * kernels.Z * sum + kernels.Phi * dkl;
  if (mode == DynamicsMode::CommonBathOnly) {
    re = -0.25 * kernels.gamma * sum * sum;
  } else {
    re = -0.5 * kernels.mu * dkl * dkl - 0.25 * kernels.gamma * (dk * dk + dl * dl) - 0.5 * dk * dl * kernels.R();
    im += 0.5 * (kp * l - k * lp) * kernels.r;
  }
  return std::exp(Complex(re, im));
}

Complex evolve_element(Complex rho0_element, int k, int l, int kp, int lp, const KernelSet& kernels,
                       DynamicsMode mode, double omega0) {
  return rho0_element * evolution_factor(k, l, kp, lp, kernels, mode, omega0);
}

TwoQubitState evolve_state(const TwoQubitState& rho0, const KernelSet& kernels, DynamicsMode mode, double omega0) {
  Matrix4 out;
  for (std::size_t row = 0; row < 4; ++row)
    for (std::size_t col = 0; col < 4; ++col) {
      out(row, col) = evolve_element(rho0(row, col), kBasisK[col], kBasisL[col], kBasisK[row], kBasisL[row], kernels,
                                     mode, omega0);
    }
  return TwoQubitState(out);
}

void write_state_csv_header(std::ostream& os) {
  bool first = true;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (const char* part : {"re", "im"}) {
        if (!first) os << ',';
        first = false;
        os << part << '_' << kBasisLabels[i] << '_' << kBasisLabels[j];
      }
  os << '\n';
}

void write_state_csv_row(std::ostream& os, const TwoQubitState& state) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(17);
  bool first = true;
  for (const Complex& z : state.matrix().a) {
    if (!first) os << ',';
    first = false;
    os << z.real() << ',' << z.imag();
  }
  os << '\n';
  os.flags(flags);
  os.precision(precision);
}

void pretty_print(std::ostream& os, const TwoQubitState& state) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::fixed << std::setprecision(6) << "      ";
  for (auto label : kBasisLabels) os << std::setw(24) << label;
  os << '\n';
  for (std::size_t i = 0; i < 4; ++i) {
    os << std::setw(6) << kBasisLabels[i];
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex z = state(i, j);
      os << "  " << std::setw(10) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::setw(9) << std::abs(z.imag())
         << 'i';
    }
    os << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

}  // namespace ddent
