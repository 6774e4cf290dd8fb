#include <catch2/catch_amalgamated.hpp>

#include "dualpol/calibration.hpp"
#include "dualpol/errors.hpp"

using namespace dualpol;

namespace {
Mat2 projector(const Vec2& v) { return v * v.adjoint(); }
}  // namespace

TEST_CASE("stacking both full-depth ramps on one axis produces composite orders") {
  const MixingReport report = same_axis_mixing_demo(1.0, 1.0);
  const Mat2 ph = projector(PolarizationState::h().amplitudes());
  const Mat2 pv = projector(PolarizationState::v().amplitudes());
  const Mat2 pr = projector(PolarizationState::r().amplitudes());
  const Mat2 pl = projector(PolarizationState::l().amplitudes());

  const auto k_at = [&](int m) { return report.order_kraus[std::size_t(m + report.order_bound)]; };
  // Order +2 is the mixed-basis composite P_H * P_R, not a single-basis projector.
  CHECK((k_at(2) - ph * pr).norm() <= 1e-9);
  CHECK((k_at(-2) - pv * pl).norm() <= 1e-9);
  CHECK((k_at(0) - (ph * pl + pv * pr)).norm() <= 1e-9);
  CHECK(k_at(2).norm() == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-9));
  CHECK(k_at(0).norm() == Catch::Approx(1.0).margin(1e-9));

  // No assignment of four distinct orders reads out both bases.
  CHECK_FALSE(report.dual_basis_feasible);
  CHECK(report.best_min_visibility <= report.visibility_floor);
}

TEST_CASE("single-gradient controls degenerate to clean splitters") {
  const MixingReport z_only = same_axis_mixing_demo(1.0, 0.0);
  const Mat2 ph = projector(PolarizationState::h().amplitudes());
  const Mat2 pr = projector(PolarizationState::r().amplitudes());
  CHECK((z_only.order_kraus[std::size_t(1 + z_only.order_bound)] - ph).norm() <= 1e-9);

  const MixingReport y_only = same_axis_mixing_demo(0.0, 1.0);
  CHECK((y_only.order_kraus[std::size_t(1 + y_only.order_bound)] - pr).norm() <= 1e-9);
}

TEST_CASE("order norms bookkeeping") {
  const MixingReport report = same_axis_mixing_demo(1.0, 1.0);
  double energy = 0.0;
  for (const auto& [order, norm] : report.order_norms) energy += norm * norm;
  CHECK(energy == Catch::Approx(2.0).margin(1e-9));  // ||J||_F^2 of a 2x2 unitary
}

TEST_CASE("mixing demo rejects out-of-range depths") {
  CHECK_THROWS_AS(same_axis_mixing_demo(-0.1, 1.0), ValidationError);
  CHECK_THROWS_AS(same_axis_mixing_demo(1.0, 1.2), ValidationError);
  CHECK_THROWS_AS(same_axis_mixing_demo(0.0, 0.0), ValidationError);
}
