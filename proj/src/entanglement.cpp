#include "ddent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ddent/errors.hpp"

namespace ddent {

namespace {

constexpr double kAsymmetryLimit = 1e-10;
constexpr double kOffDiagonalTarget = 1e-14;
constexpr int kMaxSweeps = 64;

double off_norm(const Matrix4& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

SpectralDecomposition hermitian_eigen(const Matrix4& input) {
  if (max_abs_diff(input, input.adjoint()) > kAsymmetryLimit) {
    throw DomainError("hermitian_eigen needs a Hermitian matrix");
  }
  Matrix4 a = input.hermitian_part();
  Matrix4 v = Matrix4::identity();
  const double scale = a.frobenius();
  const double target = kOffDiagonalTarget * scale;
  int sweep = 0;
  while (off_norm(a) > target) {
    if (++sweep > kMaxSweeps) throw ConvergenceError("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const Complex phase = a(p, q) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, e^{-iθ}) applied before the real rotation [[c, s], [-s, c]].
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);
        for (std::size_t i = 0; i < 4; ++i) {
          const Complex aip = a(i, p);
          const Complex aiq = a(i, q);
          a(i, p) = aip * gpp + aiq * gqp;
          a(i, q) = aip * gpq + aiq * gqq;
          const Complex vip = v(i, p);
          const Complex viq = v(i, q);
          v(i, p) = vip * gpp + viq * gqp;
          v(i, q) = vip * gpq + viq * gqq;
        }
        for (std::size_t j = 0; j < 4; ++j) {
          const Complex apj = a(p, j);
          const Complex aqj = a(q, j);
          a(p, j) = std::conj(gpp) * apj + std::conj(gqp) * aqj;
          a(q, j) = std::conj(gpq) * apj + std::conj(gqq) * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
  }
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  SpectralDecomposition out;
  for (std::size_t j = 0; j < 4; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < 4; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

Matrix4 spin_flip(const Matrix4& rho) {
  // σy⊗σy is anti-diagonal with entries (-1, 1, 1, -1).
  static constexpr std::array<double, 4> sign = {-1.0, 1.0, 1.0, -1.0};
  Matrix4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(i, j) = sign[i] * sign[j] * std::conj(rho(3 - i, 3 - j));
  return out;
}

std::array<double, 4> singular_values(const Matrix4& input) {
  Matrix4 m = input;
  for (int sweep = 0;; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma{};
        for (std::size_t i = 0; i < 4; ++i) {
          alpha += std::norm(m(i, p));
          beta += std::norm(m(i, q));
          gamma += std::conj(m(i, p)) * m(i, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < 4; ++i) {
          const Complex mp = m(i, p);
          const Complex mq = m(i, q) * phase;
          m(i, p) = c * mp - s * mq;
          m(i, q) = s * mp + c * mq;
        }
      }
    if (!rotated) break;
    if (sweep >= kMaxSweeps) throw ConvergenceError("one-sided Jacobi SVD did not converge");
  }
  std::array<double, 4> out{};
  for (std::size_t j = 0; j < 4; ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < 4; ++i) norm += std::norm(m(i, j));
    out[j] = std::sqrt(norm);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::array<double, 4> wootters_lambdas(const Matrix4& rho) {
  const auto eig = hermitian_eigen(rho);
  // ρ = A A† with A = V diag(√w); the λ_i are the singular values of the
  // symmetric matrix Aᵀ (σy⊗σy) A, whose squares are the eigenvalues of
  // √ρ ρ̃ √ρ. Working with A keeps rank-deficient states exact.
  Matrix4 a;
  for (std::size_t j = 0; j < 4; ++j) {
    const double w = eig.eigenvalues[j];
    if (w < -kClampTolerance) {
      throw IntegrityError("density matrix has eigenvalue " + std::to_string(w) + " below the clamp limit");
    }
    const double root = std::sqrt(std::max(w, 0.0));
    for (std::size_t i = 0; i < 4; ++i) a(i, j) = eig.eigenvectors(i, j) * root;
  }
  static constexpr std::array<double, 4> sign = {-1.0, 1.0, 1.0, -1.0};
  Matrix4 tau;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Complex acc{};
      for (std::size_t r = 0; r < 4; ++r) acc += a(r, i) * sign[r] * a(3 - r, j);
      tau(i, j) = acc;
    }
  return singular_values(tau);
}

std::array<double, 4> wootters_lambdas_direct(const Matrix4& rho) {
  const auto eig = hermitian_eigen(rho);
  std::array<double, 4> root{};
  for (std::size_t j = 0; j < 4; ++j) {
    if (eig.eigenvalues[j] < -kClampTolerance) {
      throw IntegrityError("density matrix has eigenvalue " + std::to_string(eig.eigenvalues[j]) +
                           " below the clamp limit");
    }
    root[j] = std::sqrt(std::max(eig.eigenvalues[j], 0.0));
  }
  const Matrix4& v = eig.eigenvectors;
  const Matrix4 sqrt_rho = v * Matrix4::diagonal(root) * v.adjoint();
  auto lambdas = hermitian_eigen((sqrt_rho * spin_flip(rho) * sqrt_rho).hermitian_part()).eigenvalues;
  for (double& x : lambdas) x = std::sqrt(std::max(x, 0.0));
  return lambdas;
}

double concurrence(const Matrix4& rho) {
  const auto l = wootters_lambdas(rho);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double concurrence(const TwoQubitState& rho) { return concurrence(rho.matrix()); }

}  // namespace ddent
