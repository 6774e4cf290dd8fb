#include "dualpol/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualpol/errors.hpp"

namespace dualpol {

namespace {

struct PhaseWindow {
  double lo, hi;  // reachable single-pass phases (radians)
};

/// Lift `target` by a multiple of 2*pi into [lo, hi]; clamp to the nearest
/// edge when no representative fits (reported as a residual, not a failure).
double lift_phase(double target, const PhaseWindow& w, bool* clamped) {
  const double two_pi = 2.0 * M_PI;
  const double k0 = std::ceil((w.lo - target) / two_pi);
  const double candidate = target + k0 * two_pi;
  if (candidate <= w.hi) return candidate;
  // No representative inside the window: pick the closer edge.
  *clamped = true;
  const double below = target + (k0 - 1.0) * two_pi;  // just under lo
  return (w.lo - below <= candidate - w.hi) ? w.lo : w.hi;
}

double width_for_index(double n, const LatticeGeometry& g, double pitch_nm) {
  const double u2 = (n - g.n_env) / (g.n_host - g.n_env);
  const double w = pitch_nm * std::sqrt(std::max(u2, 0.0));
  return std::clamp(w, g.min_width_nm, pitch_nm);
}

}  // namespace

SynthesizedLattice synthesize_lattice(const PhaseProfile& profile, double lattice_pitch_um,
                                      double wavelength_um, SynthesisArchitecture architecture,
                                      const LatticeGeometry& geometry) {
  profile.validate();
  if (!(lattice_pitch_um > 0.0)) throw ValidationError("[metasurface] lattice pitch must be > 0");
  if (!(wavelength_um > 0.0)) throw ValidationError("[metasurface] wavelength must be > 0");

  const double sites_x = profile.period_x_um / lattice_pitch_um;
  const double sites_y = profile.period_y_um / lattice_pitch_um;
  const int nx = int(std::lround(sites_x));
  const int ny = int(std::lround(sites_y));
  if (std::abs(sites_x - nx) > 1e-9 || std::abs(sites_y - ny) > 1e-9)
    throw ValidationError("[metasurface] lattice pitch must divide both periods");
  if (nx < 8 || ny < 8)
    throw ValidationError("[metasurface] need at least 8 lattice sites per period");

  const double pitch_nm = lattice_pitch_um * 1e3;
  const double h_um = geometry.height_nm * 1e-3;
  const double phase_per_index = 2.0 * M_PI * h_um / wavelength_um;
  const PhaseWindow window{
      phase_per_index * effective_index(geometry.min_width_nm, pitch_nm, geometry.n_env,
                                        geometry.n_host),
      phase_per_index * geometry.n_host};

  SynthesizedLattice out{JonesField(nx, ny, profile.period_x_um, profile.period_y_um), {}, {}};
  out.report.nx = nx;
  out.report.ny = ny;
  out.report.site_error.resize(std::size_t(nx) * ny);
  out.atoms.resize(std::size_t(nx) * ny);

  double sum_err = 0.0;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double x = out.field.x_center_um(ix);
      const double y = out.field.y_center_um(iy);
      const double alpha = lin_phase(profile, x);
      const double gamma = circ_phase(profile, y);

      bool clamped = false;
      MetaAtom atom;
      atom.height_nm = geometry.height_nm;
      atom.n_host = geometry.n_host;
      atom.n_env = geometry.n_env;
      atom.w_max_nm = pitch_nm;
      const double phi1 = lift_phase(alpha, window, &clamped);
      const double phi2 = lift_phase(-alpha, window, &clamped);
      atom.w1_nm = width_for_index(phi1 / phase_per_index, geometry, pitch_nm);
      atom.w2_nm = width_for_index(phi2 / phase_per_index, geometry, pitch_nm);
      if (architecture == SynthesisArchitecture::ChiralRetarder) {
        atom.rotation_rad = 0.0;
        atom.circ_retardance_rad = gamma;
      } else {
        // R -> e^{-i 2 theta} L under the half-wave condition, so theta =
        // -gamma/2 targets the e^{+i gamma} circular phase.
        atom.rotation_rad = -0.5 * gamma;
        atom.circ_retardance_rad = 0.0;
      }

      const Mat2 achieved = atom_jones(atom, wavelength_um);
      const Mat2 target = eq1_jones_at(profile, x, y);
      const double err = (achieved - target).norm();

      const std::size_t k = std::size_t(iy) * nx + ix;
      out.field.at(ix, iy) = achieved;
      out.atoms[k] = atom;
      out.report.site_error[k] = err;
      out.report.max_error = std::max(out.report.max_error, err);
      sum_err += err;
      if (clamped) ++out.report.unreachable_sites;
    }
  }
  out.report.mean_error = sum_err / double(out.report.site_error.size());
  return out;
}

}  // namespace dualpol
