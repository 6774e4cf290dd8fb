#include <catch2/catch_amalgamated.hpp>

#include "dualpol/calibration.hpp"
#include "dualpol/errors.hpp"
#include "support/oracles.hpp"

using namespace dualpol;

namespace {

PhaseProfile make_profile(double bz, double by) {
  PhaseProfile p;
  p.depth_z = bz;
  p.depth_y = by;
  return p;
}

KrausSet device(double bz, double by, int grid = 64) {
  return kraus_decompose(sample_field(make_profile(bz, by), grid, grid));
}

// Frozen continuum regression constants (closed-form sinc algebra):
//   eta_z(0.5, 0.5) = 12/25, eta_y(*, 0.5) = 4/5, eta_z(1.0, 0.5) = 3/5,
//   capture(0.5, 0.5) = 1600/(81 pi^4), eta_y(*, 0.25) = 8/17,
//   eta_y(*, 0.75) = 24/25, and eta_z == 0 whenever beta_y = 1 (the
//   circular factor acts first and erases the x-information).
constexpr double kEtaZHalf = 12.0 / 25.0;
constexpr double kEtaYHalf = 4.0 / 5.0;
const double kCaptureHalf = 1600.0 / (81.0 * std::pow(M_PI, 4));

}  // namespace

TEST_CASE("full-depth device sorts circular perfectly and linear not at all") {
  const KrausSet kraus = device(1.0, 1.0);
  const Visibilities vis = calibrate_visibilities(kraus, PortAssignment::four_port_default());
  REQUIRE(vis.eta_z);
  REQUIRE(vis.eta_y);
  CHECK(std::abs(*vis.eta_z) <= 1e-9);
  CHECK(*vis.eta_y == Catch::Approx(1.0).margin(1e-9));
  CHECK(vis.capture == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("full-depth port probabilities: H spreads evenly, R fills the +y row") {
  const KrausSet kraus = device(1.0, 1.0);
  const PortAssignment ports = PortAssignment::four_port_default();
  const PortProbabilities h = port_probabilities(kraus, ports, PolarizationState::h());
  for (double p : h.per_port) CHECK(p == Catch::Approx(0.25).margin(1e-9));
  CHECK(std::abs(h.loss) <= 1e-9);

  const PortProbabilities r = port_probabilities(kraus, ports, PolarizationState::r());
  for (std::size_t k = 0; k < ports.ports.size(); ++k) {
    const double expected = (*ports.ports[k].sy == +1) ? 0.5 : 0.0;
    CHECK(r.per_port[k] == Catch::Approx(expected).margin(1e-9));
  }
}

TEST_CASE("sigma_z-only device is a sharp splitter") {
  const KrausSet kraus = device(1.0, 0.0);
  const PortAssignment ports = PortAssignment::z_only();
  const Visibilities vis = calibrate_visibilities(kraus, ports);
  REQUIRE(vis.eta_z);
  CHECK(*vis.eta_z == Catch::Approx(1.0).margin(1e-9));
  CHECK_FALSE(vis.eta_y);
  const PortProbabilities v = port_probabilities(kraus, ports, PolarizationState::v());
  CHECK(v.per_port[0] <= 1e-9);
  CHECK(v.per_port[1] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("half-depth device matches the frozen regression constants") {
  // Oracle route (closed-form coefficients) ...
  const auto oracle = oracles::device_calibration(0.5, 0.5);
  CHECK(oracle.eta_z == Catch::Approx(kEtaZHalf).margin(1e-12));
  CHECK(oracle.eta_y == Catch::Approx(kEtaYHalf).margin(1e-12));
  CHECK(oracle.capture == Catch::Approx(kCaptureHalf).margin(1e-12));

  // ... and the sampled-device pipeline at a fine grid.
  const KrausSet kraus = device(0.5, 0.5, 1024);
  const Visibilities vis = calibrate_visibilities(kraus, PortAssignment::four_port_default());
  CHECK(*vis.eta_z == Catch::Approx(kEtaZHalf).margin(1e-5));
  CHECK(*vis.eta_y == Catch::Approx(kEtaYHalf).margin(1e-5));
  CHECK(vis.capture == Catch::Approx(kCaptureHalf).margin(1e-5));

  // The default 64-sample grid sits within the quadrature factor of those.
  const Visibilities coarse =
      calibrate_visibilities(device(0.5, 0.5), PortAssignment::four_port_default());
  CHECK(*coarse.eta_z == Catch::Approx(kEtaZHalf).margin(5e-3));
  CHECK(*coarse.eta_y == Catch::Approx(kEtaYHalf).margin(5e-3));
}

TEST_CASE("more frozen frontier points") {
  const auto p_1_05 = oracles::device_calibration(1.0, 0.5);
  CHECK(p_1_05.eta_z == Catch::Approx(3.0 / 5.0).margin(1e-12));
  CHECK(p_1_05.eta_y == Catch::Approx(4.0 / 5.0).margin(1e-12));
  CHECK(oracles::device_calibration(0.7, 0.25).eta_y == Catch::Approx(8.0 / 17.0).margin(1e-12));
  CHECK(oracles::device_calibration(0.3, 0.75).eta_y == Catch::Approx(24.0 / 25.0).margin(1e-12));

  const KrausSet kraus = device(1.0, 0.5, 512);
  const Visibilities vis = calibrate_visibilities(kraus, PortAssignment::four_port_default());
  CHECK(*vis.eta_z == Catch::Approx(3.0 / 5.0).margin(1e-4));
  CHECK(*vis.eta_y == Catch::Approx(4.0 / 5.0).margin(1e-4));
}

TEST_CASE("eta_z vanishes identically at full circular depth (recorded table)") {
  // Oracle table over beta_z: all zeros, trivially non-decreasing.
  double prev = -1e-9;
  for (int k = 0; k <= 10; ++k) {
    const double bz = k / 10.0;
    const auto cal = oracles::device_calibration(bz, 1.0);
    CHECK(std::abs(cal.eta_z) <= 1e-12);
    CHECK(cal.eta_z >= prev - 1e-9);
    prev = cal.eta_z;
  }
}

TEST_CASE("probability bookkeeping sums to one for arbitrary inputs") {
  RandomStream rng(21, 8);
  const KrausSet kraus = device(0.5, 0.75);
  const PortAssignment ports = PortAssignment::four_port_default();
  for (int trial = 0; trial < 20; ++trial) {
    // Random single-photon density operator.
    Eigen::Matrix2cd g;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) g(r, c) = cplx(rng.next_normal(), rng.next_normal());
    Mat2 rho = g * g.adjoint();
    rho /= rho.trace();
    const PortProbabilities probs = port_probabilities(kraus, ports, rho);
    double total = probs.loss;
    for (double p : probs.per_port) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(total == Catch::Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("effective parity operators") {
  const Mat2 sy = pauli(PauliAxis::Y).matrix;
  const Mat2 sz = pauli(PauliAxis::Z).matrix;

  const ParityOperators full =
      effective_parity_operators(device(1.0, 1.0), PortAssignment::four_port_default());
  CHECK(full.z_eff.norm() <= 1e-9);
  CHECK((full.y_eff - sy).norm() <= 1e-9);
  REQUIRE(full.y_bias);
  CHECK(*full.y_bias <= 1e-9);

  const ParityOperators zonly =
      effective_parity_operators(device(1.0, 0.0), PortAssignment::z_only());
  CHECK((zonly.z_eff - sz).norm() <= 1e-9);
  REQUIRE(zonly.z_bias);
  CHECK(*zonly.z_bias <= 1e-9);

  // Identity field with first-order ports: no signal anywhere.
  const ParityOperators dead =
      effective_parity_operators(device(0.0, 0.0), PortAssignment::four_port_default());
  CHECK(dead.z_eff.norm() <= 1e-12);
  CHECK(dead.y_eff.norm() <= 1e-12);
  CHECK_FALSE(dead.z_bias);
}

TEST_CASE("identity device with first-order ports reports no signal") {
  CHECK_THROWS_AS(
      calibrate_visibilities(device(0.0, 0.0), PortAssignment::four_port_default()),
      NoSignalError);
}

TEST_CASE("port assignments referencing orders beyond truncation are rejected") {
  const KrausSet kraus = device(1.0, 1.0);
  PortAssignment bad = PortAssignment::four_port_default();
  bad.ports[0].order = {9, 1};
  CHECK_THROWS_AS(port_probabilities(kraus, bad, PolarizationState::h()), ValidationError);
  PortAssignment dup = PortAssignment::four_port_default();
  dup.ports[1].order = dup.ports[0].order;
  CHECK_THROWS_AS(calibrate_visibilities(kraus, dup), ValidationError);
}

TEST_CASE("order reversal swaps the roles of the two axes") {
  // The construction applies the circular factor first, so swapping the
  // depths alone does not exchange eta_z and eta_y. Building the
  // order-reversed device (linear factor first) with swapped depths and
  // transposed port axes does, exactly.
  const double a = 0.5, b = 0.8;
  const int grid = 64;
  PhaseProfile swapped = make_profile(b, a);
  JonesField reversed(grid, grid, swapped.period_x_um, swapped.period_y_um);
  for (int iy = 0; iy < grid; ++iy)
    for (int ix = 0; ix < grid; ++ix)
      reversed.at(ix, iy) =
          circular_phase_jones(circ_phase(swapped, reversed.y_center_um(iy))) *
          linear_phase_jones(lin_phase(swapped, reversed.x_center_um(ix)));
  const Visibilities rev =
      calibrate_visibilities(kraus_decompose(reversed), PortAssignment::four_port_default());
  const Visibilities fwd = calibrate_visibilities(
      kraus_decompose(sample_field(make_profile(a, b), grid, grid)),
      PortAssignment::four_port_default());
  CHECK(*rev.eta_z == Catch::Approx(*fwd.eta_y).margin(1e-10));
  CHECK(*rev.eta_y == Catch::Approx(*fwd.eta_z).margin(1e-10));
}
