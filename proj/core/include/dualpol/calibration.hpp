#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dualpol/pauli.hpp"
#include "dualpol/ports.hpp"

namespace dualpol {

/// Basis-discrimination sharpness of the analyzer, calibrated with
/// eigenstate inputs and conditioned on capture into the signal ports:
///   eta_z = (E[s_x | H, captured] - E[s_x | V, captured]) / 2
///   eta_y = (E[s_y | R, captured] - E[s_y | L, captured]) / 2
/// A missing value means the assignment carries no label for that axis.
struct Visibilities {
  std::optional<double> eta_z;
  std::optional<double> eta_y;
  double capture = 0.0;  // mean signal-port probability over {H, V, R, L}
};

struct PortProbabilities {
  std::vector<double> per_port;  // aligned with PortAssignment::ports
  double loss = 0.0;
};

PortProbabilities port_probabilities(const KrausSet& kraus, const PortAssignment& ports,
                                     const Mat2& rho_in);
PortProbabilities port_probabilities(const KrausSet& kraus, const PortAssignment& ports,
                                     const PolarizationState& input);

/// Throws NoSignalError when no calibration input reaches any signal port.
Visibilities calibrate_visibilities(const KrausSet& kraus, const PortAssignment& ports);

struct ParityOperators {
  Mat2 z_eff;  // sum over ports of s_x * K^dag K
  Mat2 y_eff;
  // Unbiasedness diagnostics ||Z_eff - eta_z*capture*sigma_z||_F (when the
  // calibration is defined; absent for dead devices).
  std::optional<double> z_bias;
  std::optional<double> y_bias;
};

ParityOperators effective_parity_operators(const KrausSet& kraus, const PortAssignment& ports);

/// Demonstration that stacking both phase gradients along one axis mixes the
/// bases: the 1-D orders carry mixed-basis composites and no assignment of
/// four distinct orders reads out both bases cleanly.
struct MixingReport {
  std::vector<std::pair<int, double>> order_norms;  // (order, ||K_m||_F)
  std::vector<Mat2> order_kraus;                    // index m + order_bound
  int order_bound = 0;
  double visibility_floor = 0.05;
  double leakage_threshold = 0.1;
  // Best assignment of 4 distinct orders to the (s_x, s_y) labels.
  std::array<int, 4> best_orders{};  // for (+,+), (+,-), (-,+), (-,-)
  double best_min_visibility = 0.0;  // max over assignments of min(eta_z, eta_y)
  double best_eta_z = 0.0, best_eta_y = 0.0;
  double best_leakage = 0.0;  // cross-axis conditional bias of that assignment
  bool dual_basis_feasible = false;
};

MixingReport same_axis_mixing_demo(double beta_z, double beta_y, int order_bound = 8,
                                   int samples_per_period = 512);

}  // namespace dualpol
