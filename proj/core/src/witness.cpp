#include "dualpol/witness.hpp"

#include <cmath>

namespace dualpol {

namespace {
constexpr double kEtaFloor = 1e-9;
}

WitnessValue witness(std::optional<double> c_z_obs, std::optional<double> c_y_obs,
                     const Visibilities& arm_a, const Visibilities& arm_b,
                     std::optional<double> se_c_z, std::optional<double> se_c_y) {
  WitnessValue out;
  const bool both = c_z_obs.has_value() && c_y_obs.has_value();

  if (both && arm_a.eta_z && arm_b.eta_z && arm_a.eta_y && arm_b.eta_y) {
    out.w_paper = (*arm_a.eta_z * *arm_b.eta_z + *arm_a.eta_y * *arm_b.eta_y) -
                  (std::abs(*c_z_obs) + std::abs(*c_y_obs));
    if (*out.w_paper < 0.0) out.verdict_paper = Verdict::EntangledCertified;
  }

  auto corrected = [&](std::optional<double> c, std::optional<double> ea,
                       std::optional<double> eb, std::optional<double> se) {
    struct Corr {
      std::optional<double> value;
      bool over = false;
    } r;
    if (!c || !ea || !eb) return r;
    const double gain = *ea * *eb;
    if (std::abs(gain) < kEtaFloor) return r;  // unbounded correction
    r.value = *c / gain;
    const double se_corr = se ? *se / std::abs(gain) : 0.0;
    r.over = std::abs(*r.value) > 1.0 + 3.0 * se_corr;
    return r;
  };

  const auto cz = corrected(c_z_obs, arm_a.eta_z, arm_b.eta_z, se_c_z);
  const auto cy = corrected(c_y_obs, arm_a.eta_y, arm_b.eta_y, se_c_y);
  out.c_z_corr = cz.value;
  out.c_y_corr = cy.value;
  out.over_correction = cz.over || cy.over;
  if (cz.value && cy.value) {
    out.w_sep_aux = 1.0 - (std::abs(*cz.value) + std::abs(*cy.value));
    if (*out.w_sep_aux < 0.0) out.verdict_aux = Verdict::EntangledCertified;
  }
  return out;
}

}  // namespace dualpol
