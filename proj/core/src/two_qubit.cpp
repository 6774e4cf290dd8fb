#include "dualpol/two_qubit.hpp"

#include <cmath>

#include "dualpol/errors.hpp"

namespace dualpol {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;

Mat4 partial_transpose_second(const Mat4& rho) {
  // Index (2a+b, 2a'+b') -> transpose the b indices.
  Mat4 out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          out(2 * a + b, 2 * ap + bp) = rho(2 * a + bp, 2 * ap + b);
  return out;
}

}  // namespace

TwoQubitState::TwoQubitState(const Mat4& rho) : rho_(rho) {
  if ((rho_ - rho_.adjoint()).norm() > kHermTol)
    throw ValidationError("[polarization] density operator is not Hermitian");
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ValidationError("[polarization] density operator trace != 1: " + std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho_);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol)
    throw ValidationError("[polarization] density operator not positive semidefinite, min eig " +
                          std::to_string(min_eig));
  if (min_eig < 0.0) {
    // Round-off repair: clamp negative eigenvalues, renormalize trace.
    Eigen::Vector4d vals = es.eigenvalues().cwiseMax(0.0);
    vals /= vals.sum();
    rho_ = es.eigenvectors() * vals.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    rho_ = 0.5 * (rho_ + rho_.adjoint().eval());
  }
}

TwoQubitState TwoQubitState::pure(const Vec4& psi) {
  const double n = psi.norm();
  if (n <= 0.0) throw ValidationError("[polarization] zero state vector");
  const Vec4 u = psi / n;
  return TwoQubitState(u * u.adjoint());
}

TwoQubitState TwoQubitState::maximally_mixed() { return TwoQubitState(Mat4::Identity() / 4.0); }

Vec4 bell_vector(BellKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case BellKind::PhiPlus: return Vec4(s, 0, 0, s);
    case BellKind::PhiMinus: return Vec4(s, 0, 0, -s);
    case BellKind::PsiPlus: return Vec4(0, s, s, 0);
    case BellKind::PsiMinus: return Vec4(0, s, -s, 0);
  }
  throw ValidationError("[polarization] unknown Bell kind");
}

TwoQubitState bell_state(BellKind kind) { return TwoQubitState::pure(bell_vector(kind)); }

TwoQubitState werner_state(double p, BellKind kind) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError("[polarization] werner p out of range [0,1]: " + std::to_string(p));
  const Mat4 rho = p * bell_state(kind).rho() + (1.0 - p) * Mat4::Identity() / 4.0;
  return TwoQubitState(rho);
}

double correlator(const TwoQubitState& rho, const PauliOp& a, const PauliOp& b) {
  return (kron2(a.matrix, b.matrix) * rho.rho()).trace().real();
}

CommutatorReport commutator_checks() {
  const Mat2 sz = pauli(PauliAxis::Z).matrix;
  const Mat2 sy = pauli(PauliAxis::Y).matrix;
  const Mat4 zz = kron2(sz, sz);
  const Mat4 yy = kron2(sy, sy);
  return {(sz * sy - sy * sz).norm(), (zz * yy - yy * zz).norm()};
}

PptResult ppt_is_entangled(const TwoQubitState& rho) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(partial_transpose_second(rho.rho()));
  const double min_eig = es.eigenvalues().minCoeff();
  return {min_eig < -1e-10, min_eig};
}

TwoQubitState random_pure_state(RandomStream& rng) {
  Vec4 psi;
  for (int i = 0; i < 4; ++i) psi(i) = cplx(rng.next_normal(), rng.next_normal());
  return TwoQubitState::pure(psi);
}

TwoQubitState random_mixed_state(RandomStream& rng, int columns) {
  Eigen::MatrixXcd g(4, columns);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < columns; ++j) g(i, j) = cplx(rng.next_normal(), rng.next_normal());
  Mat4 rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return TwoQubitState(rho);
}

}  // namespace dualpol
