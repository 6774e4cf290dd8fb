#include "dualpol/meta_atom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualpol/errors.hpp"
#include "dualpol/phase_profile.hpp"

namespace dualpol {

void MetaAtom::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ValidationError("[metasurface] " + msg);
  };
  require(w1_nm > 0.0, "meta-atom w1 must be > 0");
  require(w2_nm > 0.0, "meta-atom w2 must be > 0");
  require(height_nm > 0.0, "meta-atom height must be > 0");
  require(w_max_nm > 0.0, "meta-atom w_max must be > 0");
  require(n_env >= 1.0, "n_env must be >= 1");
  require(n_host > n_env, "n_host must exceed n_env");
}

double effective_index(double w_nm, double w_max_nm, double n_env, double n_host) {
  const double u = std::clamp(w_nm / w_max_nm, 0.0, 1.0);
  return n_env + (n_host - n_env) * u * u;
}

Mat2 rotation_jones(double theta_rad) { return circular_phase_jones(theta_rad); }

Mat2 atom_jones(const MetaAtom& atom, double wavelength_um) {
  atom.validate();
  if (!(wavelength_um > 0.0)) throw ValidationError("[metasurface] wavelength must be > 0");
  const double h_um = atom.height_nm * 1e-3;
  const double phi1 =
      2.0 * M_PI * effective_index(atom.w1_nm, atom.w_max_nm, atom.n_env, atom.n_host) * h_um /
      wavelength_um;
  const double phi2 =
      2.0 * M_PI * effective_index(atom.w2_nm, atom.w_max_nm, atom.n_env, atom.n_host) * h_um /
      wavelength_um;
  Mat2 retarder = Mat2::Zero();
  retarder.diagonal() << std::polar(1.0, phi1), std::polar(1.0, phi2);
  return rotation_jones(atom.rotation_rad) * retarder * rotation_jones(-atom.rotation_rad) *
         circular_phase_jones(atom.circ_retardance_rad);
}

}  // namespace dualpol
