#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualpol/kraus.hpp"

namespace dualpol {

/// One labeled signal port. A missing sign means the port carries no
/// information about that axis (folded single-basis devices).
struct PortSpec {
  std::optional<int> sx;  // +1 / -1
  std::optional<int> sy;
  DiffractionOrder order;
};

struct PortAssignment {
  std::vector<PortSpec> ports;

  /// The four-port layout: (s_x, s_y) in {+,-}^2 at orders (+-1, +-1).
  static PortAssignment four_port_default();
  /// Two ports at orders (+-order, 0), x labels only.
  static PortAssignment z_only(int order = 1);
  /// Two ports at orders (0, +-order), y labels only.
  static PortAssignment y_only(int order = 1);

  bool has_x_labels() const;
  bool has_y_labels() const;
  /// Distinct orders, all inside the truncation of `kraus`.
  void validate(const KrausSet& kraus) const;
};

}  // namespace dualpol
