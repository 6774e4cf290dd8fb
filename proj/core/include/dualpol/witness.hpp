#pragma once

#include <optional>

#include "dualpol/calibration.hpp"

namespace dualpol {

enum class Verdict { EntangledCertified, NotCertified };

/// The two declared witness readings, always reported side by side:
///   w_paper   = (eta_z^2 + eta_y^2) - (|C_z_obs| + |C_y_obs|)
///               with eta^2 read as the two-arm product eta_A * eta_B;
///   w_sep_aux = 1 - (|C_z_obs|/(eta_z_A eta_z_B) + |C_y_obs|/(eta_y_A eta_y_B)),
///               the separable bound on visibility-corrected correlators.
/// Entanglement is certified when the respective value is < 0. The
/// auxiliary reading drives the primary verdict (the paper-literal one is
/// degenerate for ideal devices).
struct WitnessValue {
  std::optional<double> w_paper;
  std::optional<double> w_sep_aux;
  std::optional<double> c_z_corr;
  std::optional<double> c_y_corr;
  Verdict verdict_paper = Verdict::NotCertified;
  Verdict verdict_aux = Verdict::NotCertified;
  bool over_correction = false;  // corrected magnitude exceeds 1 + 3*SE
};

WitnessValue witness(std::optional<double> c_z_obs, std::optional<double> c_y_obs,
                     const Visibilities& arm_a, const Visibilities& arm_b,
                     std::optional<double> se_c_z = std::nullopt,
                     std::optional<double> se_c_y = std::nullopt);

/// Full estimation record for one run.
struct WitnessReport {
  std::optional<double> c_z_obs, c_y_obs;
  std::optional<double> c_z_corr, c_y_corr;
  std::optional<double> eta_z_a, eta_y_a, eta_z_b, eta_y_b;
  std::optional<double> w_paper, w_sep_aux;
  std::optional<double> se_c_z, se_c_y;
  std::optional<double> se_w_delta, se_w_bootstrap;
  std::optional<double> se_w;  // primary: delta-method SE of the verdict witness
  std::optional<double> w_ci_lo, w_ci_hi;  // bootstrap percentile interval
  long long n_pairs = 0;
  long long n_used = 0;  // coincidences entering the estimate
  Verdict verdict_paper = Verdict::NotCertified;
  Verdict verdict_aux = Verdict::NotCertified;
  Verdict verdict = Verdict::NotCertified;  // = verdict_aux
  bool over_correction = false;
  bool se_insufficient = false;  // too few coincidences for uncertainty estimates
};

}  // namespace dualpol
