#pragma once

#include <Eigen/Dense>
#include <complex>

namespace nures {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

namespace pauli {

inline const Matrix2& identity() {
  static const Matrix2 m = Matrix2::Identity();
  return m;
}

inline const Matrix2& x() {
  static const Matrix2 m = (Matrix2() << 0, 1, 1, 0).finished();
  return m;
}

inline const Matrix2& y() {
  static const Matrix2 m =
      (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  return m;
}

inline const Matrix2& z() {
  static const Matrix2 m = (Matrix2() << 1, 0, 0, -1).finished();
  return m;
}

/// Pauli letter by index: 0 = I, 1 = X, 2 = Y, 3 = Z.
inline const Matrix2& by_index(int k) {
  switch (k) {
    case 0: return identity();
    case 1: return x();
    case 2: return y();
    default: return z();
  }
}

}  // namespace pauli
}  // namespace nures
