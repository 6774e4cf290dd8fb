#include <catch2/catch_amalgamated.hpp>

#include "dualpol/errors.hpp"
#include "dualpol/pauli.hpp"
#include "support/oracles.hpp"

using namespace dualpol;

TEST_CASE("pauli matrices are Hermitian, traceless and square to identity") {
  for (auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    const Mat2 m = pauli(axis).matrix;
    CHECK((m - m.adjoint()).norm() <= 1e-14);
    CHECK(std::abs(m.trace()) <= 1e-14);
    CHECK((m * m - Mat2::Identity()).norm() <= 1e-14);
  }
}

TEST_CASE("H is the +1 eigenstate of sigma_z") {
  const Vec2 h = PolarizationState::h().amplitudes();
  CHECK((pauli(PauliAxis::Z).matrix * h - h).norm() <= 1e-14);
}

TEST_CASE("R is the +1 eigenstate of sigma_y, L the -1") {
  const Vec2 r = PolarizationState::r().amplitudes();
  const Vec2 l = PolarizationState::l().amplitudes();
  CHECK((pauli(PauliAxis::Y).matrix * r - r).norm() <= 1e-14);
  CHECK((pauli(PauliAxis::Y).matrix * l + l).norm() <= 1e-14);
}

TEST_CASE("[sz, sy] has Frobenius norm 2*sqrt(2)") {
  const Mat2 sz = pauli(PauliAxis::Z).matrix;
  const Mat2 sy = pauli(PauliAxis::Y).matrix;
  CHECK((sz * sy - sy * sz).norm() == Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-13));
}

TEST_CASE("polarization state rejects unnormalized amplitudes") {
  CHECK_THROWS_AS(PolarizationState(Vec2(1.0, 1.0)), ValidationError);
  CHECK_NOTHROW(PolarizationState(Vec2(std::sqrt(0.5), std::sqrt(0.5))));
}
