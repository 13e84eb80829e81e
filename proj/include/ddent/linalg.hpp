#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace ddent {

using Complex = std::complex<double>;

// Dense 2x2 complex matrix, row-major.
struct Matrix2 {
  std::array<Complex, 4> a{};

  Complex& operator()(std::size_t i, std::size_t j) { return a[2 * i + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a[2 * i + j]; }
};

// Dense 4x4 complex matrix, row-major.
struct Matrix4 {
  std::array<Complex, 16> a{};

  Complex& operator()(std::size_t i, std::size_t j) { return a[4 * i + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a[4 * i + j]; }

  static Matrix4 identity();
  static Matrix4 diagonal(const std::array<double, 4>& d);

  Matrix4 adjoint() const;
  Matrix4 conjugate() const;
  Complex trace() const;
  // (A + A†)/2
  Matrix4 hermitian_part() const;
  double max_abs() const;
  double frobenius() const;

  bool operator==(const Matrix4&) const = default;
};

Matrix4 operator*(const Matrix4& x, const Matrix4& y);
Matrix4 operator+(const Matrix4& x, const Matrix4& y);
Matrix4 operator-(const Matrix4& x, const Matrix4& y);
Matrix4 operator*(Complex s, const Matrix4& x);

double max_abs_diff(const Matrix4& x, const Matrix4& y);
Matrix4 kron(const Matrix2& x, const Matrix2& y);

}  // namespace ddent
