#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ddent/entanglement.hpp"
#include "ddent/errors.hpp"

using namespace ddent;

namespace {

using State = std::array<Complex, 4>;

Matrix4 outer(const State& psi) {
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return m;
}

State random_pure(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  State psi;
  double norm = 0.0;
  for (auto& x : psi) {
    x = Complex(n(rng), n(rng));
    norm += std::norm(x);
  }
  for (auto& x : psi) x /= std::sqrt(norm);
  return psi;
}

Matrix4 random_mixed(std::mt19937_64& rng, int rank = 4) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix4 rho;
  double total = 0.0;
  std::vector<double> w(rank);
  for (auto& x : w) total += (x = u(rng));
  for (int r = 0; r < rank; ++r) rho = rho + (w[r] / total) * outer(random_pure(rng));
  return rho.hermitian_part();
}

Matrix2 random_unitary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  const double a = u(rng), b = u(rng), c = u(rng), d = u(rng) / 4.0;
  const Complex i(0.0, 1.0);
  Matrix2 m;
  m(0, 0) = std::exp(i * (a + b)) * std::cos(d);
  m(0, 1) = std::exp(i * (a + c)) * std::sin(d);
  m(1, 0) = -std::exp(i * (a - c)) * std::sin(d);
  m(1, 1) = std::exp(i * (a - b)) * std::cos(d);
  return m;
}

// Determinant by Gaussian elimination with partial pivoting.
Complex det(Matrix4 m) {
  Complex d = 1.0;
  for (std::size_t c = 0; c < 4; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < 4; ++r)
      if (std::abs(m(r, c)) > std::abs(m(p, c))) p = r;
    if (m(p, c) == Complex{}) return 0.0;
    if (p != c) {
      for (std::size_t k = 0; k < 4; ++k) std::swap(m(p, k), m(c, k));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t r = c + 1; r < 4; ++r) {
      const Complex f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < 4; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return d;
}

// Roots of det(A − xI) located by sign changes on a fine scan and refined
// by bisection.
std::vector<double> charpoly_roots(const Matrix4& a, double lo, double hi) {
  auto f = [&](double x) { return det(a - x * Matrix4::identity()).real(); };
  std::vector<double> roots;
  const int steps = 4000;
  double x0 = lo, f0 = f(lo);
  for (int s = 1; s <= steps; ++s) {
    const double x1 = lo + (hi - lo) * s / steps;
    const double f1 = f(x1);
    if (f0 == 0.0) roots.push_back(x0);
    if (f0 * f1 < 0.0) {
      double l = x0, r = x1, fl = f0;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (l + r);
        const double fm = f(m);
        if (fl * fm <= 0.0) {
          r = m;
        } else {
          l = m;
          fl = fm;
        }
      }
      roots.push_back(0.5 * (l + r));
    }
    x0 = x1;
    f0 = f1;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

const Matrix4 kSySy = [] {
  Matrix4 m;
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}();

}  // namespace

TEST(Eigen, Identity) {
  const auto e = hermitian_eigen(Matrix4::identity());
  for (double v : e.eigenvalues) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Eigen, Diagonal) {
  const auto e = hermitian_eigen(Matrix4::diagonal({2.0, 4.0, 1.0, 3.0}));
  EXPECT_EQ(e.eigenvalues, (std::array<double, 4>{4.0, 3.0, 2.0, 1.0}));
  const std::array<std::size_t, 4> where = {1, 3, 0, 2};
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(e.eigenvectors(where[j], j)), 1.0, 1e-15);
}

TEST(Eigen, RandomHermitianAgainstCharacteristicPolynomial) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix4 a;
    for (auto& x : a.a) x = Complex(n(rng), n(rng)) * 0.5;
    a = a.hermitian_part();
    const auto e = hermitian_eigen(a);
    const auto roots = charpoly_roots(a, -6.0, 6.0);
    ASSERT_EQ(roots.size(), 4u);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(e.eigenvalues[j], roots[j], 1e-9);
    const Matrix4& v = e.eigenvectors;
    EXPECT_LT(max_abs_diff(v * Matrix4::diagonal(e.eigenvalues) * v.adjoint(), a), 1e-11);
    EXPECT_LT(max_abs_diff(v.adjoint() * v, Matrix4::identity()), 1e-12);
  }
}

TEST(Eigen, RejectsNonHermitian) {
  Matrix4 a = Matrix4::identity();
  a(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eigen(a), DomainError);
}

TEST(Concurrence, KnownStates) {
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(concurrence(outer({h, 0.0, 0.0, h})), 1.0, 1e-12);
  EXPECT_NEAR(concurrence(outer({0.6, 0.8, 0.0, 0.0})), 0.0, 1e-12);
  const Matrix4 bell = outer({h, 0.0, 0.0, h});
  const Matrix4 werner = 0.8 * bell + (0.2 / 4.0) * Matrix4::identity();
  EXPECT_NEAR(concurrence(werner), 0.7, 1e-12);
  EXPECT_EQ(concurrence(Matrix4::diagonal({0.1, 0.2, 0.3, 0.4})), 0.0);
}

TEST(Concurrence, DegenerateBellDiagonal) {
  const double h = 1.0 / std::sqrt(2.0);
  const Matrix4 phi_p = outer({h, 0.0, 0.0, h});
  const Matrix4 phi_m = outer({h, 0.0, 0.0, -h});
  const Matrix4 psi_p = outer({0.0, h, h, 0.0});
  const Matrix4 psi_m = outer({0.0, h, -h, 0.0});
  EXPECT_NEAR(concurrence(0.5 * phi_p + 0.5 * phi_m), 0.0, 1e-12);
  EXPECT_NEAR(concurrence(0.25 * (phi_p + phi_m + psi_p + psi_m)), 0.0, 1e-12);
  EXPECT_NEAR(concurrence(0.7 * psi_m + 0.1 * (phi_p + phi_m + psi_p)), 0.4, 1e-12);
}

TEST(Concurrence, PureStateOverlap) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const State psi = random_pure(rng);
    Complex overlap{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) overlap += std::conj(psi[i]) * kSySy(i, j) * std::conj(psi[j]);
    EXPECT_NEAR(concurrence(outer(psi)), std::abs(overlap), 1e-10);
  }
}

TEST(Concurrence, LocalUnitaryInvariance) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix4 rho = random_mixed(rng, 1 + trial % 4);
    const Matrix4 u = kron(random_unitary(rng), random_unitary(rng));
    const Matrix4 rotated = (u * rho * u.adjoint()).hermitian_part();
    EXPECT_NEAR(concurrence(rotated), concurrence(rho), 1e-9);
  }
}

TEST(Concurrence, RangeAndDirectEquivalence) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix4 rho = random_mixed(rng, 2 + trial % 3);
    const double c = concurrence(rho);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    const auto a = wootters_lambdas(rho);
    const auto b = wootters_lambdas_direct(rho);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(a[j], b[j], 1e-7);
  }
}

TEST(Concurrence, Continuity) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  const double eps = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix4 rho = random_mixed(rng);
    Matrix4 d;
    for (auto& x : d.a) x = Complex(n(rng), n(rng));
    d = d.hermitian_part();
    const Complex tr = d.trace();
    for (std::size_t i = 0; i < 4; ++i) d(i, i) -= tr / 4.0;
    d = (eps / d.max_abs()) * d;
    EXPECT_LE(std::abs(concurrence(rho + d) - concurrence(rho)), 20.0 * eps);
  }
}

TEST(Concurrence, RejectsNegativeState) {
  EXPECT_THROW(concurrence(Matrix4::diagonal({1.1, -0.1, 0.0, 0.0})), IntegrityError);
  EXPECT_NO_THROW(concurrence(Matrix4::diagonal({1.0 + 5e-11, -5e-11, 0.0, 0.0})));
}

TEST(SpinFlip, BellStateIsInvariant) {
  const double h = 1.0 / std::sqrt(2.0);
  const Matrix4 bell = outer({h, 0.0, 0.0, h});
  EXPECT_LT(max_abs_diff(spin_flip(bell), bell), 1e-15);
}
