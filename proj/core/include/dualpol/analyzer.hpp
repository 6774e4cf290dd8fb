#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "dualpol/calibration.hpp"
#include "dualpol/two_qubit.hpp"

namespace dualpol {

struct MetasurfaceAnalyzer {
  KrausSet kraus;
  PortAssignment ports;
};

enum class SeqBasis { Z, Y };

/// Polarizing beam splitter in one basis; the Y flavor models a quarter-wave
/// plate rotating R/L onto H/V before an ideal PBS. `visibility` is the
/// symmetric analyzer imperfection: POVM elements (I +- v sigma)/2.
struct SequentialPbsAnalyzer {
  SeqBasis basis = SeqBasis::Z;
  double visibility = 1.0;
};

/// Idealized pair-level reference: projects the photon pair onto the Bell
/// basis and reads out the two commuting parities directly.
struct IdealBellParityAnalyzer {};

struct AnalyzerModel {
  std::variant<MetasurfaceAnalyzer, SequentialPbsAnalyzer, IdealBellParityAnalyzer> device;
  double efficiency = 1.0;
  double dark_count = 0.0;  // per port, per gate

  void validate() const;
  bool pair_level() const;

  static AnalyzerModel metasurface(KrausSet kraus, PortAssignment ports, double efficiency = 1.0,
                                   double dark_count = 0.0);
  static AnalyzerModel sequential(SeqBasis basis, double visibility, double efficiency = 1.0,
                                  double dark_count = 0.0);
  static AnalyzerModel bell_parity(double efficiency = 1.0);
};

struct PortLabel {
  std::optional<int> sx;
  std::optional<int> sy;
};

/// Exact outcome distribution of one photon pair through two analyzers:
/// up to 4x4 port pairs plus an aggregate loss outcome. For pair-level
/// schemes the Bell outcome k sits on the diagonal cell (k, k) and carries
/// the parity pair directly.
struct JointDistribution {
  bool pair_level = false;
  int na = 0, nb = 0;
  std::array<std::array<double, 4>, 4> p{};
  double loss = 0.0;
  std::vector<PortLabel> labels_a, labels_b;
  std::array<int, 4> pair_parity_z{};
  std::array<int, 4> pair_parity_y{};

  double cell(int i, int j) const { return p[std::size_t(i)][std::size_t(j)]; }
  std::optional<int> parity_z(int i, int j) const;
  std::optional<int> parity_y(int i, int j) const;
  double coincidence_probability() const;
};

JointDistribution joint_probabilities(const TwoQubitState& rho, const AnalyzerModel& arm_a,
                                      const AnalyzerModel& arm_b);

struct ExactCorrelators {
  std::optional<double> c_z;  // E[s_x1 s_x2 | coincidence]
  std::optional<double> c_y;
  double coincidence_probability = 0.0;
};

ExactCorrelators exact_correlators(const TwoQubitState& rho, const AnalyzerModel& arm_a,
                                   const AnalyzerModel& arm_b);
ExactCorrelators exact_correlators(const JointDistribution& dist);

}  // namespace dualpol
