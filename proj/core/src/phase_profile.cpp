#include "dualpol/phase_profile.hpp"

#include <cmath>
#include <string>

#include "dualpol/errors.hpp"

namespace dualpol {

namespace {

double frac(double u) { return u - std::floor(u); }

double sampled_phase(const std::vector<double>& samples, double u) {
  // Piecewise-linear through samples at u_k = k/K, periodic continuation.
  const std::size_t k = samples.size();
  const double t = frac(u) * double(k);
  const std::size_t i0 = std::size_t(t) % k;
  const std::size_t i1 = (i0 + 1) % k;
  const double w = t - std::floor(t);
  return (1.0 - w) * samples[i0] + w * samples[i1];
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError("[metasurface] " + msg);
}

}  // namespace

void PhaseProfile::validate() const {
  require(period_x_um > 0.0, "period_x_um must be > 0, got " + std::to_string(period_x_um));
  require(period_y_um > 0.0, "period_y_um must be > 0, got " + std::to_string(period_y_um));
  require(depth_z >= 0.0 && depth_z <= 1.0,
          "depth_z must be in [0,1], got " + std::to_string(depth_z));
  require(depth_y >= 0.0 && depth_y <= 1.0,
          "depth_y must be in [0,1], got " + std::to_string(depth_y));
  if (shape == ProfileShape::CustomSamples) {
    require(custom_x.size() >= 8, "custom_x needs at least 8 samples");
    require(custom_y.size() >= 8, "custom_y needs at least 8 samples");
  }
}

double lin_phase(const PhaseProfile& p, double x_um) {
  if (p.shape == ProfileShape::CustomSamples) return sampled_phase(p.custom_x, x_um / p.period_x_um);
  return 2.0 * M_PI * p.depth_z * frac(x_um / p.period_x_um);
}

double circ_phase(const PhaseProfile& p, double y_um) {
  if (p.shape == ProfileShape::CustomSamples) return sampled_phase(p.custom_y, y_um / p.period_y_um);
  return 2.0 * M_PI * p.depth_y * frac(y_um / p.period_y_um);
}

Mat2 linear_phase_jones(double a) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, a);
  m(1, 1) = std::polar(1.0, -a);
  return m;
}

Mat2 circular_phase_jones(double g) {
  // exp(i*g*sigma_y) = cos(g) I + i sin(g) sigma_y, a real rotation matrix.
  Mat2 m;
  m << std::cos(g), std::sin(g), -std::sin(g), std::cos(g);
  return m;
}

Mat2 eq1_jones_at(const PhaseProfile& profile, double x_um, double y_um) {
  return linear_phase_jones(lin_phase(profile, x_um)) *
         circular_phase_jones(circ_phase(profile, y_um));
}

}  // namespace dualpol
