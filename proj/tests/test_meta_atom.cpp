#include <catch2/catch_amalgamated.hpp>

#include "dualpol/errors.hpp"
#include "dualpol/meta_atom.hpp"
#include "dualpol/pauli.hpp"
#include "dualpol/rng.hpp"

using namespace dualpol;

namespace {
constexpr double kLambda = 1.55;

/// Frobenius distance up to a global phase.
double gauge_distance(const Mat2& a, const Mat2& b) {
  const double ip = std::abs((b.adjoint() * a).trace());
  const double d2 = a.squaredNorm() + b.squaredNorm() - 2.0 * ip;
  return std::sqrt(std::max(d2, 0.0));
}
}  // namespace

TEST_CASE("symmetric un-rotated atom is the identity up to a global phase") {
  MetaAtom atom;
  atom.w1_nm = atom.w2_nm = 300.0;
  CHECK(gauge_distance(atom_jones(atom, kLambda), Mat2::Identity()) <= 1e-12);
}

TEST_CASE("half-wave rod converts R to L with the -2*theta geometric phase") {
  // Pick widths realizing phi1 - phi2 = pi.
  MetaAtom atom;
  atom.rotation_rad = 0.35;
  const double phase_per_index = 2.0 * M_PI * (atom.height_nm * 1e-3) / kLambda;
  const double n1 = 2.0;
  const double n2 = n1 - M_PI / phase_per_index;
  auto width_for = [&](double n) {
    return atom.w_max_nm * std::sqrt((n - atom.n_env) / (atom.n_host - atom.n_env));
  };
  atom.w1_nm = width_for(n1);
  atom.w2_nm = width_for(n2);

  const Vec2 r = PolarizationState::r().amplitudes();
  const Vec2 l = PolarizationState::l().amplitudes();
  const Vec2 out = atom_jones(atom, kLambda) * r;
  const Vec2 expected = std::polar(1.0, -2.0 * atom.rotation_rad) * l;
  // Compare up to the common retarder phase.
  const cplx overlap = expected.adjoint() * out;
  CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-10);
  // And the relative R->L phase between two rotation angles is -2*dtheta.
  MetaAtom atom0 = atom;
  atom0.rotation_rad = 0.0;
  const Vec2 out0 = atom_jones(atom0, kLambda) * r;
  const cplx ratio = (l.adjoint() * out).value() / (l.adjoint() * out0).value();
  CHECK(std::abs(ratio - std::polar(1.0, -2.0 * atom.rotation_rad)) <= 1e-10);
}

TEST_CASE("chiral retardance phases R and L oppositely") {
  MetaAtom atom;
  atom.w1_nm = atom.w2_nm = 250.0;
  atom.circ_retardance_rad = M_PI / 2.0;
  const Mat2 j = atom_jones(atom, kLambda);
  const Vec2 r = PolarizationState::r().amplitudes();
  const Vec2 l = PolarizationState::l().amplitudes();
  const cplx pr = (r.adjoint() * (j * r)).value();
  const cplx pl = (l.adjoint() * (j * l)).value();
  CHECK(std::abs(pr / pl - std::polar(1.0, M_PI)) <= 1e-12);  // +pi/2 vs -pi/2
}

TEST_CASE("atom_jones is unitary for random valid atoms") {
  RandomStream rng(11, 0);
  for (int i = 0; i < 200; ++i) {
    MetaAtom atom;
    atom.w1_nm = 1.0 + 499.0 * rng.next_double();
    atom.w2_nm = 1.0 + 499.0 * rng.next_double();
    atom.rotation_rad = 2.0 * M_PI * rng.next_double();
    atom.height_nm = 200.0 + 1000.0 * rng.next_double();
    atom.circ_retardance_rad = 2.0 * M_PI * rng.next_double();
    CHECK(unitarity_defect(atom_jones(atom, kLambda)) <= 1e-10);
  }
}

TEST_CASE("effective index is monotone and bounded") {
  const double n_env = 1.0, n_host = 3.48, w_max = 500.0;
  double prev = -1.0;
  for (int k = 0; k <= 64; ++k) {
    const double w = w_max * k / 64.0;
    const double n = effective_index(w, w_max, n_env, n_host);
    CHECK(n >= n_env);
    CHECK(n <= n_host);
    CHECK(n >= prev);
    prev = n;
  }
  CHECK(effective_index(2.0 * w_max, w_max, n_env, n_host) == n_host);
}

TEST_CASE("atom validation") {
  MetaAtom atom;
  atom.w1_nm = 0.0;
  CHECK_THROWS_AS(atom.validate(), ValidationError);
  atom = MetaAtom{};
  atom.n_host = 1.0;
  CHECK_THROWS_AS(atom.validate(), ValidationError);
  CHECK_THROWS_AS(atom_jones(MetaAtom{}, 0.0), ValidationError);
}
