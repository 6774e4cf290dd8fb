#include "dualpol/ports.hpp"

#include <algorithm>

#include "dualpol/errors.hpp"

namespace dualpol {

PortAssignment PortAssignment::four_port_default() {
  PortAssignment out;
  for (int sx : {+1, -1})
    for (int sy : {+1, -1}) out.ports.push_back({sx, sy, {sx, sy}});
  return out;
}

PortAssignment PortAssignment::z_only(int order) {
  PortAssignment out;
  out.ports.push_back({+1, std::nullopt, {order, 0}});
  out.ports.push_back({-1, std::nullopt, {-order, 0}});
  return out;
}

PortAssignment PortAssignment::y_only(int order) {
  PortAssignment out;
  out.ports.push_back({std::nullopt, +1, {0, order}});
  out.ports.push_back({std::nullopt, -1, {0, -order}});
  return out;
}

bool PortAssignment::has_x_labels() const {
  return std::all_of(ports.begin(), ports.end(), [](const PortSpec& p) { return p.sx.has_value(); });
}

bool PortAssignment::has_y_labels() const {
  return std::all_of(ports.begin(), ports.end(), [](const PortSpec& p) { return p.sy.has_value(); });
}

void PortAssignment::validate(const KrausSet& kraus) const {
  if (ports.empty()) throw ValidationError("[povm] empty port assignment");
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (!kraus.contains(ports[i].order.m, ports[i].order.n))
      throw ValidationError("[povm] port order (" + std::to_string(ports[i].order.m) + "," +
                            std::to_string(ports[i].order.n) + ") outside truncation");
    for (std::size_t j = i + 1; j < ports.size(); ++j)
      if (ports[i].order == ports[j].order)
        throw ValidationError("[povm] port orders must be distinct");
  }
}

}  // namespace dualpol
