#include <catch2/catch_amalgamated.hpp>

#include "dualpol/errors.hpp"
#include "dualpol/kraus.hpp"
#include "dualpol/pauli.hpp"
#include "dualpol/rng.hpp"
#include "support/oracles.hpp"

using namespace dualpol;

namespace {

PhaseProfile make_profile(double bz, double by) {
  PhaseProfile p;
  p.depth_z = bz;
  p.depth_y = by;
  return p;
}

Mat2 projector(const Vec2& v) { return v * v.adjoint(); }

}  // namespace

TEST_CASE("identity field concentrates in the zero order") {
  PhaseProfile p = make_profile(0.0, 0.0);
  const KrausSet kraus = kraus_decompose(sample_field(p, 64, 64));
  CHECK((kraus.at(0, 0) - Mat2::Identity()).norm() <= 1e-12);
  for (int m = -8; m <= 8; ++m)
    for (int n = -8; n <= 8; ++n)
      if (m != 0 || n != 0) CHECK(kraus.at(m, n).norm() <= 1e-12);
  CHECK(completeness_check(kraus) <= 1e-12);
  CHECK(completeness_check(kraus, 0, 0) <= 1e-12);
}

TEST_CASE("full-depth device: first orders carry the four projector composites") {
  const KrausSet kraus = kraus_decompose(sample_field(make_profile(1.0, 1.0), 64, 64));
  const Mat2 ph = projector(PolarizationState::h().amplitudes());
  const Mat2 pv = projector(PolarizationState::v().amplitudes());
  const Mat2 pr = projector(PolarizationState::r().amplitudes());
  const Mat2 pl = projector(PolarizationState::l().amplitudes());
  CHECK((kraus.at(1, 1) - ph * pr).norm() <= 1e-9);
  CHECK((kraus.at(1, -1) - ph * pl).norm() <= 1e-9);
  CHECK((kraus.at(-1, 1) - pv * pr).norm() <= 1e-9);
  CHECK((kraus.at(-1, -1) - pv * pl).norm() <= 1e-9);
  double off_energy = 0.0;
  for (int m = -8; m <= 8; ++m)
    for (int n = -8; n <= 8; ++n)
      if (std::abs(m) != 1 || std::abs(n) != 1) off_energy += kraus.at(m, n).squaredNorm();
  CHECK(std::sqrt(off_energy) <= 1e-9);
}

TEST_CASE("half-depth sawtooth coefficients match the closed-form sinc values") {
  // Closed form vs dense quadrature first (oracle self-check) ...
  CHECK(std::abs(oracles::sawtooth_coeff(0.5, 1) - oracles::sawtooth_coeff_quadrature(0.5, 1)) <=
        1e-9);
  CHECK(std::abs(std::abs(oracles::sawtooth_coeff(0.5, 1)) - 2.0 / M_PI) <= 1e-15);
  CHECK(std::abs(std::abs(oracles::sawtooth_coeff(0.5, -1)) - 2.0 / (3.0 * M_PI)) <= 1e-15);

  // ... then the grid path. 2048 midpoint samples per period keep the
  // (theta/2)/sin(theta/2) quadrature factor below 1e-6 at the first orders.
  std::vector<Mat2> line(2048);
  for (int j = 0; j < 2048; ++j) {
    const double u = (j + 0.5) / 2048.0;
    line[std::size_t(j)] = std::polar(1.0, 2.0 * M_PI * 0.5 * u) * Mat2::Identity();
  }
  const auto coeffs = decompose_line(line, 2);
  CHECK(std::abs(coeffs[std::size_t(2 + 1)](0, 0)) == Catch::Approx(2.0 / M_PI).margin(1e-6));
  CHECK(std::abs(coeffs[std::size_t(2 - 1)](0, 0)) ==
        Catch::Approx(2.0 / (3.0 * M_PI)).margin(1e-6));
}

TEST_CASE("beta_z=0.5 device: H/V split follows the sawtooth coefficients") {
  const KrausSet kraus = kraus_decompose(sample_field(make_profile(0.5, 1.0), 256, 64));
  // K_(m,+1) = diag(c_m(0.5), c_m(-0.5)) * P_R; check entry magnitudes.
  const double tol = 3e-5;  // midpoint factor at 256 samples/period
  CHECK(std::abs(kraus.at(1, 1)(0, 0)) == Catch::Approx(0.5 * 2.0 / M_PI).margin(tol));
  CHECK(std::abs(kraus.at(-1, 1)(0, 0)) == Catch::Approx(0.5 * 2.0 / (3.0 * M_PI)).margin(tol));
}

TEST_CASE("completeness over the full discrete order set is exact for unitary fields") {
  RandomStream rng(17, 4);
  for (int trial = 0; trial < 6; ++trial) {
    const PhaseProfile p = make_profile(rng.next_double(), rng.next_double());
    const KrausSet kraus = kraus_decompose(sample_field(p, 64, 64));
    CHECK(completeness_check(kraus) <= 1e-12);
    // The stored band plus the sink element reproduces the identity.
    Mat2 acc = kraus.sink_element;
    for (int m = -8; m <= 8; ++m)
      for (int n = -8; n <= 8; ++n) acc += kraus.povm_element(m, n);
    CHECK((acc - Mat2::Identity()).norm() <= 1e-12);
  }
}

TEST_CASE("truncated partial sums shed energy monotonically") {
  const KrausSet kraus = kraus_decompose(sample_field(make_profile(0.5, 0.5), 64, 64));
  const double r2 = completeness_check(kraus, 2, 2);
  const double r8 = completeness_check(kraus, 8, 8);
  CHECK(r2 > r8);
  CHECK(r8 > completeness_check(kraus));
  CHECK(r8 > 1e-3);  // the half-depth blaze genuinely spills past order 8
}

TEST_CASE("separability: K_mn equals the product of the 1-D factor transforms") {
  const PhaseProfile p = make_profile(0.65, 0.4);
  const int grid = 64;
  const JonesField field = sample_field(p, grid, grid);
  const KrausSet kraus = kraus_decompose(field);

  std::vector<Mat2> xline(grid), yline(grid);
  for (int j = 0; j < grid; ++j) {
    xline[std::size_t(j)] = linear_phase_jones(lin_phase(p, field.x_center_um(j)));
    yline[std::size_t(j)] = circular_phase_jones(circ_phase(p, field.y_center_um(j)));
  }
  const auto kx = decompose_line(xline, 8);
  const auto ky = decompose_line(yline, 8);
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n)
      CHECK((kraus.at(m, n) - kx[std::size_t(m + 8)] * ky[std::size_t(n + 8)]).norm() <= 1e-10);
}

TEST_CASE("aliasing and grid guards") {
  const JonesField coarse = sample_field(make_profile(1, 1), 16, 16);
  CHECK_THROWS_AS(kraus_decompose(coarse), ValidationError);  // < 32x32
  const JonesField ok = sample_field(make_profile(1, 1), 32, 32);
  CHECK_THROWS_AS(kraus_decompose(ok, 8, 8), ValidationError);  // 32 < 4*(8+1)
  CHECK_NOTHROW(kraus_decompose(ok, 7, 7));
  CHECK_THROWS_AS(kraus_decompose(sample_field(make_profile(1, 1), 64, 64)).at(9, 0),
                  ValidationError);
}

TEST_CASE("kraus json round trip") {
  const KrausSet kraus = kraus_decompose(sample_field(make_profile(0.5, 1.0), 64, 64), 3, 3);
  const KrausSet back = kraus_from_json(kraus_to_json(kraus));
  CHECK(back.m_max() == 3);
  CHECK(back.grid_nx == 64);
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) CHECK((back.at(m, n) - kraus.at(m, n)).norm() == 0.0);
  CHECK((back.sink_element - kraus.sink_element).norm() == 0.0);
  CHECK_THROWS_AS(kraus_from_json("{}"), ValidationError);
}
