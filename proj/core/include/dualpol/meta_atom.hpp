#pragma once

#include "dualpol/linalg.hpp"

namespace dualpol {

/// Phenomenological meta-atom: an anisotropic nanopost with cross-section
/// widths w1/w2 (form birefringence), in-plane rotation, and a circular
/// retardance phi_c standing in for a chiral inclusion. Effective indices
/// come from a smooth monotone fill-factor map, not a field solver.
struct MetaAtom {
  double w1_nm = 250.0;
  double w2_nm = 250.0;
  double rotation_rad = 0.0;
  double height_nm = 800.0;
  double n_host = 3.48;
  double n_env = 1.0;
  double circ_retardance_rad = 0.0;
  double w_max_nm = 500.0;  // lattice pitch; caps the fill factor

  void validate() const;  // throws ValidationError
};

/// n_env + (n_host - n_env) * clamp((w/w_max)^2, 0, 1); monotone in w.
double effective_index(double w_nm, double w_max_nm, double n_env, double n_host);

/// R(theta) = exp(i*theta*sigma_y): the rod-rotation convention. A half-wave
/// rod at angle theta maps R -> e^{-i 2 theta} L (up to the common phase).
Mat2 rotation_jones(double theta_rad);

/// R(theta) diag(e^{i phi1}, e^{i phi2}) R(-theta) * exp(i phi_c sigma_y),
/// phi_k = 2 pi n_eff(w_k) h / lambda. Unitary for every valid atom.
Mat2 atom_jones(const MetaAtom& atom, double wavelength_um);

}  // namespace dualpol
