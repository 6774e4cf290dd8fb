#include <catch2/catch_amalgamated.hpp>

#include "dualpol/errors.hpp"
#include "dualpol/synthesis.hpp"

using namespace dualpol;

namespace {
PhaseProfile make_profile(double bz, double by) {
  PhaseProfile p;
  p.depth_z = bz;
  p.depth_y = by;
  return p;
}
constexpr double kPitch = 0.5;
constexpr double kLambda = 1.55;
}  // namespace

TEST_CASE("constant profile synthesizes a uniform exact lattice") {
  const auto lattice = synthesize_lattice(make_profile(0.0, 0.0), kPitch, kLambda,
                                          SynthesisArchitecture::ChiralRetarder);
  CHECK(lattice.report.max_error <= 1e-10);
  CHECK(lattice.report.unreachable_sites == 0);
  const Mat2 first = lattice.field.at(0, 0);
  for (int iy = 0; iy < lattice.field.ny(); ++iy)
    for (int ix = 0; ix < lattice.field.nx(); ++ix)
      CHECK((lattice.field.at(ix, iy) - first).norm() <= 1e-12);
}

TEST_CASE("chiral architecture reproduces the target field exactly") {
  const auto lattice = synthesize_lattice(make_profile(1.0, 1.0), kPitch, kLambda,
                                          SynthesisArchitecture::ChiralRetarder);
  CHECK(lattice.report.nx == 16);
  CHECK(lattice.report.ny == 16);
  CHECK(lattice.report.max_error <= 1e-8);
  CHECK(lattice.field.max_unitarity_defect() <= 1e-10);
}

TEST_CASE("chiral architecture stays exact at partial depths") {
  for (double bz : {0.25, 0.5, 0.75})
    for (double by : {0.5, 1.0}) {
      const auto lattice = synthesize_lattice(make_profile(bz, by), kPitch, kLambda,
                                              SynthesisArchitecture::ChiralRetarder);
      CHECK(lattice.report.max_error <= 1e-8);
    }
}

TEST_CASE("geometric-phase architecture reports the half-wave conflict residual") {
  // An x-varying linear retardance breaks the half-wave condition the
  // Pancharatnam-Berry phase needs, so the residual is O(1); the recorded
  // maximum for this configuration is ~2.76.
  const auto lattice = synthesize_lattice(make_profile(1.0, 1.0), kPitch, kLambda,
                                          SynthesisArchitecture::GeometricPhase);
  CHECK(lattice.report.max_error > 1.0);
  CHECK(lattice.report.max_error <= 2.0 * std::sqrt(2.0) + 1e-9);
  CHECK(lattice.report.mean_error > 0.1);
}

TEST_CASE("unreachable phases are clamped and reported, not fatal") {
  LatticeGeometry thin;
  thin.height_nm = 120.0;  // phase window much narrower than 2*pi
  const auto lattice = synthesize_lattice(make_profile(1.0, 0.0), kPitch, kLambda,
                                          SynthesisArchitecture::ChiralRetarder, thin);
  CHECK(lattice.report.unreachable_sites > 0);
  CHECK(lattice.report.max_error > 0.0);
}

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(synthesize_lattice(make_profile(1, 1), 0.3, kLambda,
                                     SynthesisArchitecture::ChiralRetarder),
                  ValidationError);  // 0.3 does not divide 8.0
  PhaseProfile small = make_profile(1, 1);
  small.period_x_um = small.period_y_um = 2.0;
  CHECK_THROWS_AS(
      synthesize_lattice(small, 0.5, kLambda, SynthesisArchitecture::ChiralRetarder),
      ValidationError);  // only 4 sites per period
}

TEST_CASE("atoms land on the lattice with valid geometry") {
  const auto lattice = synthesize_lattice(make_profile(0.5, 0.5), kPitch, kLambda,
                                          SynthesisArchitecture::GeometricPhase);
  for (const MetaAtom& atom : lattice.atoms) {
    CHECK_NOTHROW(atom.validate());
    CHECK(atom.w1_nm <= kPitch * 1e3);
    CHECK(atom.w2_nm <= kPitch * 1e3);
  }
}
