#include "dualpol/analyzer.hpp"

#include <cmath>
#include <string>

#include "dualpol/errors.hpp"

namespace dualpol {

void AnalyzerModel::validate() const {
  if (!(efficiency >= 0.0 && efficiency <= 1.0))
    throw ValidationError("[witness] analyzer efficiency must be in [0,1]");
  if (!(dark_count >= 0.0 && dark_count < 1.0))
    throw ValidationError("[witness] analyzer dark-count probability must be in [0,1)");
  if (const auto* ms = std::get_if<MetasurfaceAnalyzer>(&device)) {
    const double residual = completeness_check(ms->kraus);
    if (residual > 1e-6)
      throw ValidationError("[witness] metasurface analyzer completeness residual too large: " +
                            std::to_string(residual));
    ms->ports.validate(ms->kraus);
  } else if (const auto* pbs = std::get_if<SequentialPbsAnalyzer>(&device)) {
    if (!(pbs->visibility >= 0.0 && pbs->visibility <= 1.0))
      throw ValidationError("[witness] PBS visibility must be in [0,1]");
  } else if (std::holds_alternative<IdealBellParityAnalyzer>(device)) {
    if (dark_count != 0.0)
      throw ValidationError("[witness] the Bell-parity reference has no per-port dark-count model");
  }
}

bool AnalyzerModel::pair_level() const {
  return std::holds_alternative<IdealBellParityAnalyzer>(device);
}

AnalyzerModel AnalyzerModel::metasurface(KrausSet kraus, PortAssignment ports, double efficiency,
                                         double dark_count) {
  AnalyzerModel out{MetasurfaceAnalyzer{std::move(kraus), std::move(ports)}, efficiency,
                    dark_count};
  out.validate();
  return out;
}

AnalyzerModel AnalyzerModel::sequential(SeqBasis basis, double visibility, double efficiency,
                                        double dark_count) {
  AnalyzerModel out{SequentialPbsAnalyzer{basis, visibility}, efficiency, dark_count};
  out.validate();
  return out;
}

AnalyzerModel AnalyzerModel::bell_parity(double efficiency) {
  AnalyzerModel out{IdealBellParityAnalyzer{}, efficiency, 0.0};
  out.validate();
  return out;
}

std::optional<int> JointDistribution::parity_z(int i, int j) const {
  if (pair_level) {
    if (i != j) return std::nullopt;
    return pair_parity_z[std::size_t(i)];
  }
  if (!labels_a[std::size_t(i)].sx || !labels_b[std::size_t(j)].sx) return std::nullopt;
  return *labels_a[std::size_t(i)].sx * *labels_b[std::size_t(j)].sx;
}

std::optional<int> JointDistribution::parity_y(int i, int j) const {
  if (pair_level) {
    if (i != j) return std::nullopt;
    return pair_parity_y[std::size_t(i)];
  }
  if (!labels_a[std::size_t(i)].sy || !labels_b[std::size_t(j)].sy) return std::nullopt;
  return *labels_a[std::size_t(i)].sy * *labels_b[std::size_t(j)].sy;
}

double JointDistribution::coincidence_probability() const {
  double sum = 0.0;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) sum += cell(i, j);
  return sum;
}

namespace {

struct ArmPovm {
  std::vector<Mat2> click;  // click-formation operators G_i (sum <= I)
  std::vector<PortLabel> labels;
};

/// Fold detector efficiency and per-port dark counts into per-port
/// operators: an arm ends with exactly one clicked port either because the
/// photon was detected there and no other port fired, or because the photon
/// was lost and exactly one dark count fired.
ArmPovm arm_povm(const AnalyzerModel& model) {
  ArmPovm out;
  std::vector<Mat2> elements;
  if (const auto* ms = std::get_if<MetasurfaceAnalyzer>(&model.device)) {
    for (const auto& port : ms->ports.ports) {
      elements.push_back(ms->kraus.povm_element(port.order.m, port.order.n));
      out.labels.push_back({port.sx, port.sy});
    }
  } else if (const auto* pbs = std::get_if<SequentialPbsAnalyzer>(&model.device)) {
    const Mat2 sigma =
        (pbs->basis == SeqBasis::Z ? pauli(PauliAxis::Z) : pauli(PauliAxis::Y)).matrix;
    elements.push_back(0.5 * (Mat2::Identity() + pbs->visibility * sigma));
    elements.push_back(0.5 * (Mat2::Identity() - pbs->visibility * sigma));
    if (pbs->basis == SeqBasis::Z) {
      out.labels.push_back({+1, std::nullopt});
      out.labels.push_back({-1, std::nullopt});
    } else {
      out.labels.push_back({std::nullopt, +1});
      out.labels.push_back({std::nullopt, -1});
    }
  } else {
    throw ValidationError("[witness] pair-level analyzer has no per-arm POVM");
  }

  const double eff = model.efficiency;
  const double d = model.dark_count;
  const int n_ports = int(elements.size());
  Mat2 detected_total = Mat2::Zero();
  for (const auto& e : elements) detected_total += eff * e;
  const Mat2 lost = Mat2::Identity() - detected_total;
  const double quiet = std::pow(1.0 - d, n_ports - 1);
  for (const auto& e : elements) out.click.push_back(quiet * (eff * e + d * lost));
  return out;
}

JointDistribution bell_parity_distribution(const TwoQubitState& rho, const AnalyzerModel& a,
                                           const AnalyzerModel& b) {
  JointDistribution dist;
  dist.pair_level = true;
  dist.na = dist.nb = 4;
  dist.labels_a.resize(4);
  dist.labels_b.resize(4);
  constexpr BellKind kKinds[4] = {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                                  BellKind::PsiMinus};
  dist.pair_parity_z = {+1, +1, -1, -1};
  dist.pair_parity_y = {-1, +1, +1, -1};
  const double eff = a.efficiency * b.efficiency;
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Vec4 v = bell_vector(kKinds[k]);
    const double q = (v.adjoint() * rho.rho() * v).value().real();
    dist.p[std::size_t(k)][std::size_t(k)] = eff * (q < 0.0 ? 0.0 : q);
    sum += dist.p[std::size_t(k)][std::size_t(k)];
  }
  dist.loss = 1.0 - sum;
  return dist;
}

}  // namespace

JointDistribution joint_probabilities(const TwoQubitState& rho, const AnalyzerModel& arm_a,
                                      const AnalyzerModel& arm_b) {
  arm_a.validate();
  arm_b.validate();
  if (arm_a.pair_level() != arm_b.pair_level())
    throw ValidationError(
        "[witness] incompatible analyzer kinds: pair-level and per-arm outcomes have no port "
        "mapping");
  if (arm_a.pair_level()) return bell_parity_distribution(rho, arm_a, arm_b);

  const ArmPovm a = arm_povm(arm_a);
  const ArmPovm b = arm_povm(arm_b);
  JointDistribution dist;
  dist.na = int(a.click.size());
  dist.nb = int(b.click.size());
  dist.labels_a = a.labels;
  dist.labels_b = b.labels;
  double sum = 0.0;
  for (int i = 0; i < dist.na; ++i)
    for (int j = 0; j < dist.nb; ++j) {
      double pr = (kron2(a.click[std::size_t(i)], b.click[std::size_t(j)]) * rho.rho())
                      .trace()
                      .real();
      if (pr < 0.0) pr = 0.0;
      dist.p[std::size_t(i)][std::size_t(j)] = pr;
      sum += pr;
    }
  dist.loss = 1.0 - sum;
  return dist;
}

ExactCorrelators exact_correlators(const JointDistribution& dist) {
  ExactCorrelators out;
  out.coincidence_probability = dist.coincidence_probability();
  if (out.coincidence_probability <= 0.0) return out;
  double acc_z = 0.0, acc_y = 0.0;
  bool has_z = true, has_y = true;
  for (int i = 0; i < dist.na; ++i)
    for (int j = 0; j < dist.nb; ++j) {
      const double pr = dist.cell(i, j);
      if (dist.pair_level && i != j) continue;
      const auto pz = dist.parity_z(i, j);
      const auto py = dist.parity_y(i, j);
      if (pz)
        acc_z += *pz * pr;
      else
        has_z = false;
      if (py)
        acc_y += *py * pr;
      else
        has_y = false;
    }
  if (has_z) out.c_z = acc_z / out.coincidence_probability;
  if (has_y) out.c_y = acc_y / out.coincidence_probability;
  return out;
}

ExactCorrelators exact_correlators(const TwoQubitState& rho, const AnalyzerModel& arm_a,
                                   const AnalyzerModel& arm_b) {
  return exact_correlators(joint_probabilities(rho, arm_a, arm_b));
}

}  // namespace dualpol
