#include "dualpol/pauli.hpp"

#include <cmath>

#include "dualpol/errors.hpp"

namespace dualpol {

PauliOp pauli(PauliAxis axis) {
  Mat2 m;
  const cplx i(0.0, 1.0);
  switch (axis) {
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, -i, i, 0; break;
    case PauliAxis::Z: m << 1, 0, 0, -1; break;
  }
  return {axis, m};
}

PolarizationState::PolarizationState(const Vec2& amplitudes) : amps_(amplitudes) {
  const double n = amps_.squaredNorm();
  if (std::abs(n - 1.0) > 1e-12)
    throw ValidationError("[polarization] state amplitudes must be normalized: |a_H|^2+|a_V|^2 = " +
                          std::to_string(n));
}

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

PolarizationState PolarizationState::h() { return PolarizationState(Vec2(1, 0)); }
PolarizationState PolarizationState::v() { return PolarizationState(Vec2(0, 1)); }
PolarizationState PolarizationState::d() { return PolarizationState(Vec2(kInvSqrt2, kInvSqrt2)); }
PolarizationState PolarizationState::a() { return PolarizationState(Vec2(kInvSqrt2, -kInvSqrt2)); }
PolarizationState PolarizationState::r() {
  return PolarizationState(Vec2(kInvSqrt2, cplx(0, kInvSqrt2)));
}
PolarizationState PolarizationState::l() {
  return PolarizationState(Vec2(kInvSqrt2, cplx(0, -kInvSqrt2)));
}

}  // namespace dualpol
