#pragma once

#include "dualpol/linalg.hpp"

namespace dualpol {

// Basis conventions used throughout (see README "Conventions"):
//   |H> = (1,0), |V> = (0,1)
//   sigma_z = diag(1,-1), sigma_y = [[0,-i],[i,0]], sigma_x = [[0,1],[1,0]]
//   R = (|H> + i|V>)/sqrt(2) is the +1 eigenstate of sigma_y, L the -1.

enum class PauliAxis { X, Y, Z };

struct PauliOp {
  PauliAxis axis;
  Mat2 matrix;
};

PauliOp pauli(PauliAxis axis);

/// Normalized polarization amplitude (a_H, a_V).
class PolarizationState {
 public:
  explicit PolarizationState(const Vec2& amplitudes);

  const Vec2& amplitudes() const { return amps_; }
  Mat2 density() const { return amps_ * amps_.adjoint(); }

  static PolarizationState h();
  static PolarizationState v();
  static PolarizationState d();
  static PolarizationState a();
  static PolarizationState r();
  static PolarizationState l();

 private:
  Vec2 amps_;
};

}  // namespace dualpol
