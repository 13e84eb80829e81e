#pragma once

#include <array>
#include <iosfwd>
#include <string_view>

#include "ddent/kernels.hpp"
#include "ddent/linalg.hpp"

namespace ddent {

// Basis index i <-> (k, l): 0 = (+,+), 1 = (+,-), 2 = (-,+), 3 = (-,-).
inline constexpr std::array<int, 4> kBasisK = {1, 1, -1, -1};
inline constexpr std::array<int, 4> kBasisL = {1, -1, 1, -1};
inline constexpr std::array<std::string_view, 4> kBasisLabels = {"++", "+-", "-+", "--"};

std::size_t basis_index(int k, int l);

inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

// Two-qubit density matrix in the σz⊗σz product basis. Construction checks
// Hermiticity, unit trace and positivity.
class TwoQubitState {
 public:
  explicit TwoQubitState(const Matrix4& m);

  const Matrix4& matrix() const { return m_; }
  Complex operator()(std::size_t row, std::size_t col) const { return m_(row, col); }
  double purity() const;
  double min_eigenvalue() const;

 private:
  Matrix4 m_;
};

// |+,+><+,+|
TwoQubitState plus_plus_state();

// Factor multiplying ρ[(k',l'),(k,l)] between time 0 and the kernels' time.
// With Δ = k'l' − kl the exponent is
//   −iω0 Z (k'+l'−k−l)/2 + iΦΔ − γ(k'+l'−k−l)²/4                (common)
//   −iω0 Z (k'+l'−k−l)/2 + iΦΔ − μΔ²/2 − γ((k'−k)² + (l'−l)²)/4
//     − (k'−k)(l'−l)R/2 + i(k'l − kl')r/2                         (noise)
Complex evolution_factor(int k, int l, int kp, int lp, const KernelSet& kernels, DynamicsMode mode, double omega0);

Complex evolve_element(Complex rho0_element, int k, int l, int kp, int lp, const KernelSet& kernels,
                       DynamicsMode mode, double omega0);

TwoQubitState evolve_state(const TwoQubitState& rho0, const KernelSet& kernels, DynamicsMode mode, double omega0);

// One CSV row of 16 interleaved (re, im) entries, row-major.
void write_state_csv_header(std::ostream& os);
void write_state_csv_row(std::ostream& os, const TwoQubitState& state);
void pretty_print(std::ostream& os, const TwoQubitState& state);

}  // namespace ddent
