#pragma once

#include <vector>

#include "dualpol/jones_field.hpp"
#include "dualpol/meta_atom.hpp"
#include "dualpol/phase_profile.hpp"

namespace dualpol {

/// How the circular phase is realized per site.
///   ChiralRetarder:  phi_c carries the circular phase directly (exact).
///   GeometricPhase:  rod rotation theta = -phi_circ/2; clean only under the
///                    half-wave condition, which a varying linear retardance
///                    breaks, so the per-site residual is generally O(1).
enum class SynthesisArchitecture { GeometricPhase, ChiralRetarder };

struct LatticeGeometry {
  double height_nm = 800.0;
  double n_host = 3.48;
  double n_env = 1.0;
  double min_width_nm = 1.0;
};

struct SynthesisReport {
  int nx = 0, ny = 0;
  std::vector<double> site_error;  // Frobenius distance to the target, row-major
  double max_error = 0.0;
  double mean_error = 0.0;
  int unreachable_sites = 0;  // sites where a phase had to be clamped
};

struct SynthesizedLattice {
  JonesField field;
  SynthesisReport report;
  std::vector<MetaAtom> atoms;  // row-major, one per site
};

/// Pick a MetaAtom per lattice site so atom_jones approximates the target
/// field at the site center. Requires the pitch to divide both periods with
/// at least 8 sites per period.
SynthesizedLattice synthesize_lattice(const PhaseProfile& profile, double lattice_pitch_um,
                                      double wavelength_um, SynthesisArchitecture architecture,
                                      const LatticeGeometry& geometry = {});

}  // namespace dualpol
