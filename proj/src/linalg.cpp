#include "ddent/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ddent {

Matrix4 Matrix4::identity() { return diagonal({1.0, 1.0, 1.0, 1.0}); }

Matrix4 Matrix4::diagonal(const std::array<double, 4>& d) {
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = d[i];
  return m;
}

Matrix4 Matrix4::adjoint() const {
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

Matrix4 Matrix4::conjugate() const {
  Matrix4 m;
  for (std::size_t i = 0; i < 16; ++i) m.a[i] = std::conj(a[i]);
  return m;
}

Complex Matrix4::trace() const { return a[0] + a[5] + a[10] + a[15]; }

Matrix4 Matrix4::hermitian_part() const {
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return m;
}

double Matrix4::max_abs() const {
  double out = 0.0;
  for (const Complex& z : a) out = std::max(out, std::abs(z));
  return out;
}

double Matrix4::frobenius() const {
  double s = 0.0;
  for (const Complex& z : a) s += std::norm(z);
  return std::sqrt(s);
}

Matrix4 operator*(const Matrix4& x, const Matrix4& y) {
  Matrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      const Complex xik = x(i, k);
      for (std::size_t j = 0; j < 4; ++j) m(i, j) += xik * y(k, j);
    }
  return m;
}

Matrix4 operator+(const Matrix4& x, const Matrix4& y) {
  Matrix4 m;
  for (std::size_t i = 0; i < 16; ++i) m.a[i] = x.a[i] + y.a[i];
  return m;
}

Matrix4 operator-(const Matrix4& x, const Matrix4& y) {
  Matrix4 m;
  for (std::size_t i = 0; i < 16; ++i) m.a[i] = x.a[i] - y.a[i];
  return m;
}

Matrix4 operator*(Complex s, const Matrix4& x) {
  Matrix4 m;
  for (std::size_t i = 0; i < 16; ++i) m.a[i] = s * x.a[i];
  return m;
}

double max_abs_diff(const Matrix4& x, const Matrix4& y) { return (x - y).max_abs(); }

Matrix4 kron(const Matrix2& x, const Matrix2& y) {
  Matrix4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return m;
}

}  // namespace ddent
