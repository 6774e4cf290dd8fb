#include <catch2/catch_amalgamated.hpp>

#include "dualpol/errors.hpp"
#include "dualpol/jones_field.hpp"
#include "dualpol/rng.hpp"

using namespace dualpol;

TEST_CASE("sampling the identity profile yields identity everywhere") {
  PhaseProfile p;
  p.depth_z = p.depth_y = 0.0;
  const JonesField field = sample_field(p, 16, 16);
  for (int iy = 0; iy < 16; ++iy)
    for (int ix = 0; ix < 16; ++ix)
      CHECK((field.at(ix, iy) - Mat2::Identity()).norm() <= 1e-14);
}

TEST_CASE("samples agree with pointwise re-evaluation at midpoints") {
  PhaseProfile p;
  p.depth_z = 0.8;
  p.depth_y = 0.45;
  const JonesField field = sample_field(p, 64, 64);
  for (int iy : {0, 13, 63})
    for (int ix : {0, 7, 62})
      CHECK((field.at(ix, iy) -
             eq1_jones_at(p, field.x_center_um(ix), field.y_center_um(iy))).norm() <= 1e-12);
  CHECK(field.max_unitarity_defect() <= 1e-10);
}

TEST_CASE("resampling an existing field is a nearest-site pass-through") {
  PhaseProfile p;
  p.depth_z = 1.0;
  p.depth_y = 0.5;
  const JonesField field = sample_field(p, 32, 32);
  const JonesField same = sample_field(field, 32, 32);
  for (int iy = 0; iy < 32; ++iy)
    for (int ix = 0; ix < 32; ++ix) CHECK((same.at(ix, iy) - field.at(ix, iy)).norm() == 0.0);

  const JonesField doubled = sample_field(field, 64, 64);
  CHECK((doubled.at(10, 20) - field.at(5, 10)).norm() == 0.0);
}

TEST_CASE("grid coarser than 8 per axis is rejected") {
  PhaseProfile p;
  CHECK_THROWS_AS(sample_field(p, 4, 64), ValidationError);
  CHECK_THROWS_AS(sample_field(p, 64, 7), ValidationError);
}

TEST_CASE("json round trip is bit exact") {
  RandomStream rng(31, 2);
  JonesField field(9, 11, 8.0, 6.5);
  for (int iy = 0; iy < field.ny(); ++iy)
    for (int ix = 0; ix < field.nx(); ++ix) {
      Mat2& m = field.at(ix, iy);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          m(r, c) = cplx(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
    }
  const JonesField back = field_from_json(field_to_json(field));
  REQUIRE(back.nx() == field.nx());
  REQUIRE(back.ny() == field.ny());
  CHECK(back.period_x_um() == field.period_x_um());
  CHECK(back.period_y_um() == field.period_y_um());
  for (int iy = 0; iy < field.ny(); ++iy)
    for (int ix = 0; ix < field.nx(); ++ix)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          CHECK(back.at(ix, iy)(r, c).real() == field.at(ix, iy)(r, c).real());
          CHECK(back.at(ix, iy)(r, c).imag() == field.at(ix, iy)(r, c).imag());
        }
}

TEST_CASE("malformed field documents are rejected") {
  CHECK_THROWS_AS(field_from_json("{"), ValidationError);
  CHECK_THROWS_AS(field_from_json("{\"kind\": \"other\"}"), ValidationError);
}
