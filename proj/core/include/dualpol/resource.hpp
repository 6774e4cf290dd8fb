#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualpol/phase_profile.hpp"
#include "dualpol/two_qubit.hpp"

namespace dualpol {

enum class SchemeKind { SequentialSharp, IdealBellParity, Metasurface };

struct SchemeSpec {
  SchemeKind kind = SchemeKind::IdealBellParity;
  std::string label;
  double visibility = 1.0;              // sequential analyzers
  std::optional<PhaseProfile> profile;  // metasurface device
  int samples_per_period = 64;
  int order_bound = 8;
};

struct ResourceRow {
  std::string scheme;
  double epsilon = 0.0;
  bool unbounded = false;
  std::string flag;  // "", "eta_z_zero", "eta_y_zero", "no_signal", "deterministic"
  long long n_required_w = 0;               // SE(W) <= epsilon (verdict witness)
  long long n_required_per_correlator = 0;  // max corrected-correlator SE <= epsilon
  double fit_c = 0.0;                       // SE(W) ~ c / sqrt(N)
  double fit_exponent = 0.0;                // free-slope log-log fit
  double fit_residual = 0.0;                // rms log residual of the free fit
  double eta_z = 0.0, eta_y = 0.0;          // per-arm visibilities entering the estimate
};

/// For each scheme, measure SE(W-hat) empirically over `replicates`
/// simulated runs per pair count on a geometric grid, fit SE = c/sqrt(N),
/// and report the smallest N meeting the target. Schemes with a dead axis
/// are flagged unbounded and skipped, never averaged.
std::vector<ResourceRow> resource_compare(const TwoQubitState& rho, double epsilon,
                                          const std::vector<SchemeSpec>& schemes,
                                          std::uint64_t seed, int replicates = 256);

}  // namespace dualpol
