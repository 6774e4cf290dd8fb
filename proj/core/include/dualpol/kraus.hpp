#pragma once

#include <string>
#include <vector>

#include "dualpol/jones_field.hpp"
#include "dualpol/linalg.hpp"

namespace dualpol {

struct DiffractionOrder {
  int m = 0;  // x order
  int n = 0;  // y order
  friend bool operator==(const DiffractionOrder&, const DiffractionOrder&) = default;
};

/// Diffraction-order Kraus operators of a sampled periodic Jones field:
/// K_{mn} = (1/N) sum_grid J(x,y) exp(-i 2 pi (m x/Lx + n y/Ly)).
/// Operators are stored for |m| <= m_max, |n| <= n_max; the energy in all
/// remaining discrete orders of the grid is kept as the aggregate
/// `sink_element` POVM element, so the stored set plus the sink is complete
/// by the discrete Parseval identity whenever the field is pointwise unitary.
class KrausSet {
 public:
  KrausSet(int m_max, int n_max);

  int m_max() const { return m_max_; }
  int n_max() const { return n_max_; }
  bool contains(int m, int n) const;
  const Mat2& at(int m, int n) const;  // throws ValidationError outside the truncation
  Mat2& at(int m, int n);

  /// POVM element K^dag K of one stored order.
  Mat2 povm_element(int m, int n) const;

  Mat2 sink_element = Mat2::Zero();    // device total minus the stored band
  Mat2 gram_total = Mat2::Identity();  // (1/N) sum J^dag J over the grid
  int grid_nx = 0, grid_ny = 0;
  double period_x_um = 0.0, period_y_um = 0.0;

 private:
  int m_max_, n_max_;
  std::vector<Mat2> store_;
};

/// Decompose a sampled field. Requires a grid of at least 32x32 and at
/// least 4*(order bound + 1) samples per period on each axis (aliasing
/// guard).
KrausSet kraus_decompose(const JonesField& field, int m_max = 8, int n_max = 8);

/// Device completeness over the full discrete order set: ||gram_total - I||_F.
/// Zero (to round-off) for pointwise-unitary fields.
double completeness_check(const KrausSet& kraus);
/// Partial-sum residual || sum_{|m|<=mb,|n|<=nb} K^dag K - I ||_F; decreases
/// toward the full-set value as the bounds grow.
double completeness_check(const KrausSet& kraus, int m_bound, int n_bound);

/// 1-D decomposition of a line of samples (midpoint positions), orders
/// -m_max..m_max. Index i corresponds to order i - m_max.
std::vector<Mat2> decompose_line(const std::vector<Mat2>& samples, int m_max);

std::string kraus_to_json(const KrausSet& kraus);
KrausSet kraus_from_json(const std::string& text);

}  // namespace dualpol
