#pragma once

#include <vector>

#include "dualpol/linalg.hpp"

namespace dualpol {

enum class ProfileShape { SawtoothRamp, CustomSamples };

/// Periodic unit-cell description of the analyzer surface. depth_z scales
/// the linear (sigma_z) phase ramp along x, depth_y the circular (sigma_y)
/// ramp along y; depth 1 winds the doubled phase through a full 2*pi per
/// period, depth 0 switches the axis off.
struct PhaseProfile {
  double period_x_um = 8.0;
  double period_y_um = 8.0;
  double depth_z = 1.0;
  double depth_y = 1.0;
  ProfileShape shape = ProfileShape::SawtoothRamp;
  // CustomSamples: doubled-phase values (radians) on a uniform grid over one
  // period, piecewise-linear in between with periodic wrap-around.
  std::vector<double> custom_x;
  std::vector<double> custom_y;

  void validate() const;  // throws ValidationError
};

/// Doubled linear phase 2*phi_lin(x): 2*pi*depth_z*frac(x/period) for the
/// sawtooth shape.
double lin_phase(const PhaseProfile& profile, double x_um);
/// Doubled circular phase 2*phi_circ(y).
double circ_phase(const PhaseProfile& profile, double y_um);

/// exp(i*2*phi_lin(x)*sigma_z) * exp(i*2*phi_circ(y)*sigma_y); unitary,
/// periodic in both axes. The circular factor acts on the input first.
Mat2 eq1_jones_at(const PhaseProfile& profile, double x_um, double y_um);

/// The two commuting factors on their own.
Mat2 linear_phase_jones(double doubled_phase);
Mat2 circular_phase_jones(double doubled_phase);

}  // namespace dualpol
