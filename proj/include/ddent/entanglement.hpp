#pragma once

#include <array>

#include "ddent/dynamics.hpp"
#include "ddent/linalg.hpp"

namespace ddent {

struct SpectralDecomposition {
  // Descending.
  std::array<double, 4> eigenvalues{};
  // Column j is the eigenvector of eigenvalues[j].
  Matrix4 eigenvectors;
};

// Cyclic complex Jacobi diagonalization of a Hermitian 4x4 matrix.
SpectralDecomposition hermitian_eigen(const Matrix4& a);

// Eigenvalues of ρ in [-kClampTolerance, 0) are rounding and clamped to zero;
// anything lower is an invalid state.
inline constexpr double kClampTolerance = 1e-10;

// Wootters concurrence max(0, λ1 - λ2 - λ3 - λ4).
double concurrence(const Matrix4& rho);
double concurrence(const TwoQubitState& rho);

// λ_i of the spin-flipped spectrum, descending.
std::array<double, 4> wootters_lambdas(const Matrix4& rho);
// Same λ_i as square roots of the eigenvalues of W = √ρ ρ̃ √ρ. Loses about
// half the digits on rank-deficient states.
std::array<double, 4> wootters_lambdas_direct(const Matrix4& rho);

// Singular values of a complex 4x4 matrix by one-sided Jacobi, descending.
std::array<double, 4> singular_values(const Matrix4& m);

// σy⊗σy ρ* σy⊗σy
Matrix4 spin_flip(const Matrix4& rho);

}  // namespace ddent
