#include "dualpol/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "dualpol/errors.hpp"
#include "dualpol/phase_profile.hpp"

namespace dualpol {

namespace {

constexpr double kCompletenessTol = 1e-6;

void require_complete(const KrausSet& kraus) {
  const double r = completeness_check(kraus);
  if (r > kCompletenessTol)
    throw ValidationError("[povm] device completeness residual too large: " + std::to_string(r));
}

double clamp_prob(double p) { return p < 0.0 ? 0.0 : p; }

struct ConditionalMeans {
  std::optional<double> mean_sx;
  std::optional<double> mean_sy;
  double capture = 0.0;
};

ConditionalMeans conditional_means(const KrausSet& kraus, const PortAssignment& ports,
                                   const Mat2& rho_in) {
  ConditionalMeans out;
  double sum = 0.0, acc_x = 0.0, acc_y = 0.0;
  bool all_x = true, all_y = true;
  for (const auto& port : ports.ports) {
    const double p = clamp_prob((kraus.povm_element(port.order.m, port.order.n) * rho_in)
                                    .trace()
                                    .real());
    sum += p;
    if (port.sx)
      acc_x += *port.sx * p;
    else
      all_x = false;
    if (port.sy)
      acc_y += *port.sy * p;
    else
      all_y = false;
  }
  out.capture = sum;
  if (sum > 0.0) {
    if (all_x) out.mean_sx = acc_x / sum;
    if (all_y) out.mean_sy = acc_y / sum;
  }
  return out;
}

}  // namespace

PortProbabilities port_probabilities(const KrausSet& kraus, const PortAssignment& ports,
                                     const Mat2& rho_in) {
  require_complete(kraus);
  ports.validate(kraus);
  PortProbabilities out;
  double sum = 0.0;
  for (const auto& port : ports.ports) {
    const double p =
        clamp_prob((kraus.povm_element(port.order.m, port.order.n) * rho_in).trace().real());
    out.per_port.push_back(p);
    sum += p;
  }
  out.loss = 1.0 - sum;
  return out;
}

PortProbabilities port_probabilities(const KrausSet& kraus, const PortAssignment& ports,
                                     const PolarizationState& input) {
  return port_probabilities(kraus, ports, input.density());
}

Visibilities calibrate_visibilities(const KrausSet& kraus, const PortAssignment& ports) {
  require_complete(kraus);
  ports.validate(kraus);
  const auto h = conditional_means(kraus, ports, PolarizationState::h().density());
  const auto v = conditional_means(kraus, ports, PolarizationState::v().density());
  const auto r = conditional_means(kraus, ports, PolarizationState::r().density());
  const auto l = conditional_means(kraus, ports, PolarizationState::l().density());

  Visibilities out;
  out.capture = 0.25 * (h.capture + v.capture + r.capture + l.capture);
  if (out.capture <= 0.0)
    throw NoSignalError("[povm] no signal: calibration inputs reach no signal port");
  if (ports.has_x_labels() && h.mean_sx && v.mean_sx)
    out.eta_z = 0.5 * (*h.mean_sx - *v.mean_sx);
  if (ports.has_y_labels() && r.mean_sy && l.mean_sy)
    out.eta_y = 0.5 * (*r.mean_sy - *l.mean_sy);
  return out;
}

ParityOperators effective_parity_operators(const KrausSet& kraus, const PortAssignment& ports) {
  require_complete(kraus);
  ports.validate(kraus);
  ParityOperators out;
  out.z_eff = Mat2::Zero();
  out.y_eff = Mat2::Zero();
  for (const auto& port : ports.ports) {
    const Mat2 e = kraus.povm_element(port.order.m, port.order.n);
    if (port.sx) out.z_eff += double(*port.sx) * e;
    if (port.sy) out.y_eff += double(*port.sy) * e;
  }
  try {
    const Visibilities vis = calibrate_visibilities(kraus, ports);
    const Mat2 sz = pauli(PauliAxis::Z).matrix;
    const Mat2 sy = pauli(PauliAxis::Y).matrix;
    if (vis.eta_z) out.z_bias = (out.z_eff - *vis.eta_z * vis.capture * sz).norm();
    if (vis.eta_y) out.y_bias = (out.y_eff - *vis.eta_y * vis.capture * sy).norm();
  } catch (const NoSignalError&) {
    // Dead device: parity operators are still well defined, diagnostics are not.
  }
  return out;
}

MixingReport same_axis_mixing_demo(double beta_z, double beta_y, int order_bound,
                                   int samples_per_period) {
  if (!(beta_z >= 0.0 && beta_z <= 1.0) || !(beta_y >= 0.0 && beta_y <= 1.0))
    throw ValidationError("[povm] mixing demo depths must be in [0,1]");
  if (beta_z == 0.0 && beta_y == 0.0)
    throw ValidationError("[povm] mixing demo needs at least one nonzero depth");

  std::vector<Mat2> line(samples_per_period);
  for (int j = 0; j < samples_per_period; ++j) {
    const double u = (j + 0.5) / samples_per_period;
    line[j] = linear_phase_jones(2.0 * M_PI * beta_z * u) *
              circular_phase_jones(2.0 * M_PI * beta_y * u);
  }
  MixingReport report;
  report.order_bound = order_bound;
  report.order_kraus = decompose_line(line, order_bound);
  for (int m = -order_bound; m <= order_bound; ++m)
    report.order_norms.push_back({m, report.order_kraus[std::size_t(m + order_bound)].norm()});

  // Per-order probabilities for the four calibration inputs.
  const int count = 2 * order_bound + 1;
  const Vec2 inputs[4] = {PolarizationState::h().amplitudes(), PolarizationState::v().amplitudes(),
                          PolarizationState::r().amplitudes(), PolarizationState::l().amplitudes()};
  std::vector<std::array<double, 4>> prob(count);
  for (int i = 0; i < count; ++i)
    for (int s = 0; s < 4; ++s)
      prob[std::size_t(i)][std::size_t(s)] = (report.order_kraus[std::size_t(i)] * inputs[s]).squaredNorm();

  // Exhaustive search over ordered assignments of four distinct orders to
  // the (s_x, s_y) labels (+,+), (+,-), (-,+), (-,-).
  constexpr int kSx[4] = {+1, +1, -1, -1};
  constexpr int kSy[4] = {+1, -1, +1, -1};
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) {
      if (b == a) continue;
      for (int c = 0; c < count; ++c) {
        if (c == a || c == b) continue;
        for (int d = 0; d < count; ++d) {
          if (d == a || d == b || d == c) continue;
          const int pick[4] = {a, b, c, d};
          double mean_sx[4], mean_sy[4];
          bool dead = false;
          for (int s = 0; s < 4; ++s) {
            double cap = 0.0, mx = 0.0, my = 0.0;
            for (int k = 0; k < 4; ++k) {
              const double p = prob[std::size_t(pick[k])][std::size_t(s)];
              cap += p;
              mx += kSx[k] * p;
              my += kSy[k] * p;
            }
            if (cap <= 0.0) {
              dead = true;
              break;
            }
            mean_sx[s] = mx / cap;
            mean_sy[s] = my / cap;
          }
          if (dead) continue;
          const double eta_z = 0.5 * (mean_sx[0] - mean_sx[1]);
          const double eta_y = 0.5 * (mean_sy[2] - mean_sy[3]);
          const double leakage =
              std::max({std::abs(mean_sy[0]), std::abs(mean_sy[1]), std::abs(mean_sx[2]),
                        std::abs(mean_sx[3])});
          const double min_vis = std::min(eta_z, eta_y);
          const bool admissible = leakage <= report.leakage_threshold;
          if (admissible && min_vis > report.best_min_visibility) {
            report.best_min_visibility = min_vis;
            report.best_eta_z = eta_z;
            report.best_eta_y = eta_y;
            report.best_leakage = leakage;
            report.best_orders = {a - order_bound, b - order_bound, c - order_bound,
                                  d - order_bound};
          }
        }
      }
    }
  report.dual_basis_feasible = report.best_min_visibility > report.visibility_floor;
  return report;
}

}  // namespace dualpol
