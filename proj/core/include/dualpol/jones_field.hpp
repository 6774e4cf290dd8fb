#pragma once

#include <string>
#include <vector>

#include "dualpol/linalg.hpp"
#include "dualpol/phase_profile.hpp"

namespace dualpol {

/// Pointwise Jones matrices on a uniform midpoint grid over one unit cell.
/// Immutable after construction.
class JonesField {
 public:
  JonesField(int nx, int ny, double period_x_um, double period_y_um);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double period_x_um() const { return period_x_um_; }
  double period_y_um() const { return period_y_um_; }
  double dx_um() const { return period_x_um_ / nx_; }
  double dy_um() const { return period_y_um_ / ny_; }
  double x_center_um(int ix) const { return (ix + 0.5) * dx_um(); }
  double y_center_um(int iy) const { return (iy + 0.5) * dy_um(); }

  const Mat2& at(int ix, int iy) const { return samples_[std::size_t(iy) * nx_ + ix]; }
  Mat2& at(int ix, int iy) { return samples_[std::size_t(iy) * nx_ + ix]; }

  double max_unitarity_defect() const;

 private:
  int nx_, ny_;
  double period_x_um_, period_y_um_;
  std::vector<Mat2> samples_;
};

/// Midpoint-sample eq1_jones_at over one unit cell. nx, ny >= 8.
JonesField sample_field(const PhaseProfile& profile, int nx, int ny);
/// Resample an existing field by nearest site (pass-through when the grid
/// matches). nx, ny >= 8.
JonesField sample_field(const JonesField& source, int nx, int ny);

/// Self-describing JSON document; doubles round-trip bit-exactly.
std::string field_to_json(const JonesField& field);
JonesField field_from_json(const std::string& text);
void save_field(const JonesField& field, const std::string& path);
JonesField load_field(const std::string& path);

}  // namespace dualpol
