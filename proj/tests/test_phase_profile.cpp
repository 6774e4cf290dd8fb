#include <catch2/catch_amalgamated.hpp>

#include "dualpol/errors.hpp"
#include "dualpol/pauli.hpp"
#include "dualpol/phase_profile.hpp"

using namespace dualpol;

namespace {
PhaseProfile make_profile(double bz, double by) {
  PhaseProfile p;
  p.depth_z = bz;
  p.depth_y = by;
  return p;
}
}  // namespace

TEST_CASE("zero depths give the identity everywhere") {
  const PhaseProfile p = make_profile(0.0, 0.0);
  for (double x : {0.0, 1.3, 5.7})
    for (double y : {0.2, 4.0, 7.9})
      CHECK((eq1_jones_at(p, x, y) - Mat2::Identity()).norm() <= 1e-14);
}

TEST_CASE("linear ramp at quarter period") {
  const PhaseProfile p = make_profile(1.0, 0.0);
  const Mat2 j = eq1_jones_at(p, p.period_x_um / 4.0, 0.3);
  Mat2 expected = Mat2::Zero();
  expected(0, 0) = std::polar(1.0, M_PI / 2.0);
  expected(1, 1) = std::polar(1.0, -M_PI / 2.0);
  CHECK((j - expected).norm() <= 1e-12);
}

TEST_CASE("circular ramp phases the R state by pi at half period") {
  const PhaseProfile p = make_profile(0.0, 1.0);
  const Vec2 r = PolarizationState::r().amplitudes();
  const Vec2 out = eq1_jones_at(p, 0.1, p.period_y_um / 2.0) * r;
  CHECK((out - std::polar(1.0, M_PI) * r).norm() <= 1e-12);
}

TEST_CASE("factorization: J(x,y) = J(x,0) * J(0,y)") {
  const PhaseProfile p = make_profile(0.7, 0.4);
  for (double x : {0.3, 2.9, 6.6})
    for (double y : {0.9, 3.3, 7.2})
      CHECK((eq1_jones_at(p, x, y) - eq1_jones_at(p, x, 0.0) * eq1_jones_at(p, 0.0, y)).norm() <=
            1e-10);
}

TEST_CASE("periodicity in both axes") {
  const PhaseProfile p = make_profile(0.6, 0.9);
  for (double x : {0.4, 3.1})
    for (double y : {1.7, 5.5}) {
      CHECK((eq1_jones_at(p, x + p.period_x_um, y) - eq1_jones_at(p, x, y)).norm() <= 1e-12);
      CHECK((eq1_jones_at(p, x, y + p.period_y_um) - eq1_jones_at(p, x, y)).norm() <= 1e-12);
    }
}

TEST_CASE("eq1 matrices are unitary") {
  const PhaseProfile p = make_profile(0.35, 0.85);
  for (double x : {0.0, 1.1, 4.2, 7.7})
    for (double y : {0.5, 2.2, 6.1}) CHECK(unitarity_defect(eq1_jones_at(p, x, y)) <= 1e-12);
}

TEST_CASE("custom sampled profiles interpolate and wrap") {
  PhaseProfile p;
  p.shape = ProfileShape::CustomSamples;
  p.custom_x.assign(16, 0.5);  // constant phase
  p.custom_y.assign(16, 0.0);
  p.validate();
  CHECK(lin_phase(p, 1.234) == Catch::Approx(0.5).margin(1e-14));
  CHECK(circ_phase(p, 4.0) == Catch::Approx(0.0).margin(1e-14));

  p.custom_x[0] = 1.0;  // interpolation between first two samples
  const double du = p.period_x_um / 16.0;
  CHECK(lin_phase(p, 0.5 * du) == Catch::Approx(1.0).margin(1e-12));
  CHECK(lin_phase(p, 1.0 * du) == Catch::Approx(0.75).margin(1e-12));
}

TEST_CASE("profile validation names the offending field") {
  PhaseProfile p = make_profile(1.5, 0.5);
  CHECK_THROWS_WITH(p.validate(), Catch::Matchers::ContainsSubstring("depth_z"));
  p = make_profile(0.5, -0.1);
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = make_profile(0.5, 0.5);
  p.period_x_um = 0.0;
  CHECK_THROWS_WITH(p.validate(), Catch::Matchers::ContainsSubstring("period_x_um"));
  PhaseProfile c;
  c.shape = ProfileShape::CustomSamples;
  c.custom_x.assign(4, 0.0);
  c.custom_y.assign(16, 0.0);
  CHECK_THROWS_AS(c.validate(), ValidationError);
}
