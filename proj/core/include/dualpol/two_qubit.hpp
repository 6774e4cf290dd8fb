#pragma once

#include "dualpol/linalg.hpp"
#include "dualpol/pauli.hpp"
#include "dualpol/rng.hpp"

namespace dualpol {

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Two-photon polarization density operator over |HH>,|HV>,|VH>,|VV>.
/// Validated on construction: Hermitian within 1e-12, unit trace within
/// 1e-12, smallest eigenvalue >= -1e-10 (slightly negative eigenvalues
/// from round-off are clamped to zero and the trace renormalized).
class TwoQubitState {
 public:
  explicit TwoQubitState(const Mat4& rho);

  const Mat4& rho() const { return rho_; }
  double purity() const { return (rho_ * rho_).trace().real(); }

  static TwoQubitState pure(const Vec4& psi);
  static TwoQubitState maximally_mixed();

 private:
  Mat4 rho_;
};

Vec4 bell_vector(BellKind kind);
TwoQubitState bell_state(BellKind kind);

/// rho = p |Bell><Bell| + (1-p) I/4. Throws ValidationError unless 0<=p<=1.
TwoQubitState werner_state(double p, BellKind kind);

/// Tr[(A (x) B) rho].
double correlator(const TwoQubitState& rho, const PauliOp& a, const PauliOp& b);

struct CommutatorReport {
  double single_photon_norm;  // ||[sz, sy]||_F = 2*sqrt(2)
  double two_photon_norm;     // ||[sz(x)sz, sy(x)sy]||_F = 0
};
CommutatorReport commutator_checks();

struct PptResult {
  bool entangled;
  double min_eigenvalue;
};

/// Peres-Horodecki criterion: partial transpose on the second photon.
/// Exact (necessary and sufficient) for two qubits.
PptResult ppt_is_entangled(const TwoQubitState& rho);

/// Haar-like pure state from a normalized complex Gaussian 4-vector.
TwoQubitState random_pure_state(RandomStream& rng);
/// Full-rank mixed state from a Wishart-like product G G^dag / Tr.
TwoQubitState random_mixed_state(RandomStream& rng, int columns = 4);

}  // namespace dualpol
