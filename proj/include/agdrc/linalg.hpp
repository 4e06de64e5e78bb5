#pragma once

#include <array>
#include <cstddef>

namespace agdrc {

/// Dense N×N matrix stored row-major. Only N = 2 and N = 3 are used.
template <std::size_t N>
struct Matrix {
  std::array<double, N * N> v{};

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return v[i * N + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v[i * N + j]; }

  Matrix transposed() const {
    Matrix t;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix&) const = default;
};

using Mat2 = Matrix<2>;
using Mat3 = Matrix<3>;
using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

template <std::size_t N>
Matrix<N> operator+(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> r;
  for (std::size_t k = 0; k < N * N; ++k) r.v[k] = a.v[k] + b.v[k];
  return r;
}

template <std::size_t N>
Matrix<N> operator-(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> r;
  for (std::size_t k = 0; k < N * N; ++k) r.v[k] = a.v[k] - b.v[k];
  return r;
}

template <std::size_t N>
Matrix<N> operator*(double s, const Matrix<N>& a) {
  Matrix<N> r;
  for (std::size_t k = 0; k < N * N; ++k) r.v[k] = s * a.v[k];
  return r;
}

template <std::size_t N>
Matrix<N> operator*(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < N; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Vec2 operator*(const Mat2& a, const Vec2& x) {
  return {a(0, 0) * x[0] + a(0, 1) * x[1], a(1, 0) * x[0] + a(1, 1) * x[1]};
}

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

/// xᵀ M x for symmetric M.
inline double quad(const Mat2& m, const Vec2& x) { return dot(x, m * x); }

/// Builds a symmetric 2×2 matrix from its three free entries.
inline Mat2 sym2(double p11, double p12, double p22) {
  Mat2 m;
  m(0, 0) = p11;
  m(0, 1) = p12;
  m(1, 0) = p12;
  m(1, 1) = p22;
  return m;
}

template <std::size_t N>
bool is_symmetric(const Matrix<N>& m) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

// Closed-form eigenvalues of symmetric matrices, ascending.
Vec2 sym_eigenvalues(const Mat2& m);
Vec3 sym_eigenvalues(const Mat3& m);

/// Largest eigenvalue modulus of a general real 2×2 matrix.
double spectral_radius(const Mat2& m);

/// λmax(P)/λmin(P) of a symmetric positive definite P; +inf if P is not PD.
double condition_number(const Mat2& p);

}  // namespace agdrc
