#include "dualpol/jones_field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "dualpol/errors.hpp"

namespace dualpol {

using nlohmann::json;

JonesField::JonesField(int nx, int ny, double period_x_um, double period_y_um)
    : nx_(nx), ny_(ny), period_x_um_(period_x_um), period_y_um_(period_y_um) {
  if (nx < 1 || ny < 1) throw ValidationError("[metasurface] field grid must be positive");
  if (!(period_x_um > 0.0) || !(period_y_um > 0.0))
    throw ValidationError("[metasurface] field periods must be > 0");
  samples_.assign(std::size_t(nx) * ny, Mat2::Identity());
}

double JonesField::max_unitarity_defect() const {
  double worst = 0.0;
  for (const auto& m : samples_) worst = std::max(worst, unitarity_defect(m));
  return worst;
}

JonesField sample_field(const PhaseProfile& profile, int nx, int ny) {
  profile.validate();
  if (nx < 8 || ny < 8)
    throw ValidationError("[metasurface] sample grid too coarse: need >= 8 per axis");
  JonesField field(nx, ny, profile.period_x_um, profile.period_y_um);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      field.at(ix, iy) = eq1_jones_at(profile, field.x_center_um(ix), field.y_center_um(iy));
  return field;
}

JonesField sample_field(const JonesField& source, int nx, int ny) {
  if (nx < 8 || ny < 8)
    throw ValidationError("[metasurface] sample grid too coarse: need >= 8 per axis");
  JonesField field(nx, ny, source.period_x_um(), source.period_y_um());
  for (int iy = 0; iy < ny; ++iy) {
    const int sy = std::min(int(field.y_center_um(iy) / source.dy_um()), source.ny() - 1);
    for (int ix = 0; ix < nx; ++ix) {
      const int sx = std::min(int(field.x_center_um(ix) / source.dx_um()), source.nx() - 1);
      field.at(ix, iy) = source.at(sx, sy);
    }
  }
  return field;
}

std::string field_to_json(const JonesField& field) {
  json doc;
  doc["kind"] = "jones_field";
  doc["nx"] = field.nx();
  doc["ny"] = field.ny();
  doc["period_x_um"] = field.period_x_um();
  doc["period_y_um"] = field.period_y_um();
  doc["dx_um"] = field.dx_um();
  doc["dy_um"] = field.dy_um();
  json entries = json::array();
  for (int iy = 0; iy < field.ny(); ++iy)
    for (int ix = 0; ix < field.nx(); ++ix) {
      const Mat2& m = field.at(ix, iy);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  doc["samples"] = std::move(entries);
  return doc.dump(2);
}

JonesField field_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("[metasurface] bad field document: ") + e.what());
  }
  if (doc.value("kind", "") != "jones_field")
    throw ValidationError("[metasurface] not a jones_field document");
  const int nx = doc.at("nx").get<int>();
  const int ny = doc.at("ny").get<int>();
  JonesField field(nx, ny, doc.at("period_x_um").get<double>(),
                   doc.at("period_y_um").get<double>());
  const auto& entries = doc.at("samples");
  if (entries.size() != std::size_t(nx) * ny * 4)
    throw ValidationError("[metasurface] field document sample count mismatch");
  std::size_t k = 0;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      Mat2& m = field.at(ix, iy);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          m(r, c) = cplx(entries[k][0].get<double>(), entries[k][1].get<double>());
          ++k;
        }
    }
  return field;
}

void save_field(const JonesField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("[metasurface] cannot open for write: " + path);
  out << field_to_json(field) << '\n';
}

JonesField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("[metasurface] cannot open for read: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return field_from_json(text);
}

}  // namespace dualpol
