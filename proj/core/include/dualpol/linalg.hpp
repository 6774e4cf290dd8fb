#pragma once

#include <Eigen/Dense>
#include <complex>

namespace dualpol {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

inline double fro_norm(const Mat2& m) { return m.norm(); }
inline double fro_norm(const Mat4& m) { return m.norm(); }

inline Mat2 dagger(const Mat2& m) { return m.adjoint(); }
inline Mat4 dagger(const Mat4& m) { return m.adjoint(); }

/// Kronecker product, arm A in the slow index: |a⟩⊗|b⟩ -> index 2a+b.
inline Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

inline double unitarity_defect(const Mat2& j) {
  return (j.adjoint() * j - Mat2::Identity()).norm();
}

inline bool is_unitary(const Mat2& j, double tol = 1e-10) {
  return unitarity_defect(j) <= tol;
}

}  // namespace dualpol
