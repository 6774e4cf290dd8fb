#pragma once

#include <cstdint>

#include "dualpol/analyzer.hpp"
#include "dualpol/witness.hpp"

namespace dualpol {

/// Coincidence counts over port pairs plus aggregate loss. `semantics`
/// carries the port labels (and the exact distribution the table was drawn
/// from) so estimators can interpret the cells.
struct CoincidenceTable {
  std::array<std::array<long long, 4>, 4> counts{};
  long long loss_count = 0;
  long long n_pairs = 0;
  JointDistribution semantics;

  long long coincidences() const;
};

/// Multinomial draw over the 17-outcome distribution (16 port pairs + loss).
/// Deterministic for fixed (seed, stream_salt); events are indexed on a
/// counter-based generator, so results do not depend on scheduling.
CoincidenceTable simulate_counts(const TwoQubitState& rho, const AnalyzerModel& arm_a,
                                 const AnalyzerModel& arm_b, long long n_pairs,
                                 std::uint64_t seed, std::uint64_t stream_salt = 0);

/// Deterministic table with counts = round(p * n) (largest-remainder).
CoincidenceTable table_from_probabilities(const JointDistribution& dist, long long n_pairs);

/// Sharp simultaneous reference: Bell-basis outcomes mapped to parity pairs.
CoincidenceTable bell_parity_sampler(const TwoQubitState& rho, long long n_pairs,
                                     std::uint64_t seed);

/// Plug-in correlators, both witness readings, delta-method and bootstrap
/// standard errors (percentile interval included). Throws on a table with
/// zero coincidences; below 100 coincidences the uncertainty fields are
/// flagged absent instead of estimated.
WitnessReport estimate_from_counts(const CoincidenceTable& table, const Visibilities& arm_a,
                                   const Visibilities& arm_b, int bootstrap_b = 1000,
                                   std::uint64_t seed = 0);

struct SequentialResult {
  WitnessReport report;
  CoincidenceTable z_table;
  CoincidenceTable y_table;
};

/// Baseline protocol: n/2 pairs with both arms analyzing sigma_z, n/2 with
/// both arms analyzing sigma_y (quarter-wave plate + PBS model at the given
/// visibility).
SequentialResult sequential_run(const TwoQubitState& rho, long long n_total, double visibility,
                                std::uint64_t seed, int bootstrap_b = 1000);

}  // namespace dualpol
