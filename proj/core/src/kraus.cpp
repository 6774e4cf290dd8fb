#include "dualpol/kraus.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <string>

#include "dualpol/errors.hpp"

namespace dualpol {

using nlohmann::json;

KrausSet::KrausSet(int m_max, int n_max) : m_max_(m_max), n_max_(n_max) {
  if (m_max < 0 || n_max < 0) throw ValidationError("[povm] order bounds must be >= 0");
  store_.assign(std::size_t(2 * m_max + 1) * (2 * n_max + 1), Mat2::Zero());
}

bool KrausSet::contains(int m, int n) const {
  return std::abs(m) <= m_max_ && std::abs(n) <= n_max_;
}

const Mat2& KrausSet::at(int m, int n) const {
  if (!contains(m, n))
    throw ValidationError("[povm] order (" + std::to_string(m) + "," + std::to_string(n) +
                          ") outside truncation");
  return store_[std::size_t(n + n_max_) * (2 * m_max_ + 1) + (m + m_max_)];
}

Mat2& KrausSet::at(int m, int n) {
  return const_cast<Mat2&>(static_cast<const KrausSet&>(*this).at(m, n));
}

Mat2 KrausSet::povm_element(int m, int n) const {
  const Mat2& k = at(m, n);
  return k.adjoint() * k;
}

KrausSet kraus_decompose(const JonesField& field, int m_max, int n_max) {
  const int nx = field.nx(), ny = field.ny();
  if (nx < 32 || ny < 32)
    throw ValidationError("[povm] field must be sampled on at least a 32x32 grid");
  if (nx < 4 * (m_max + 1) || ny < 4 * (n_max + 1))
    throw ValidationError("[povm] aliasing guard: need >= 4*(order bound + 1) samples per period");

  KrausSet out(m_max, n_max);
  out.grid_nx = nx;
  out.grid_ny = ny;
  out.period_x_um = field.period_x_um();
  out.period_y_um = field.period_y_um();

  // Two-pass separable transform over midpoint sample positions.
  const int mcount = 2 * m_max + 1;
  std::vector<Mat2> partial(std::size_t(mcount) * ny, Mat2::Zero());
  for (int iy = 0; iy < ny; ++iy) {
    for (int m = -m_max; m <= m_max; ++m) {
      Mat2 acc = Mat2::Zero();
      for (int ix = 0; ix < nx; ++ix) {
        const double phase = -2.0 * M_PI * m * (ix + 0.5) / nx;
        acc += field.at(ix, iy) * std::polar(1.0, phase);
      }
      partial[std::size_t(iy) * mcount + (m + m_max)] = acc / double(nx);
    }
  }
  for (int n = -n_max; n <= n_max; ++n) {
    for (int m = -m_max; m <= m_max; ++m) {
      Mat2 acc = Mat2::Zero();
      for (int iy = 0; iy < ny; ++iy) {
        const double phase = -2.0 * M_PI * n * (iy + 0.5) / ny;
        acc += partial[std::size_t(iy) * mcount + (m + m_max)] * std::polar(1.0, phase);
      }
      out.at(m, n) = acc / double(ny);
    }
  }

  Mat2 gram = Mat2::Zero();
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) gram += field.at(ix, iy).adjoint() * field.at(ix, iy);
  out.gram_total = gram / double(std::size_t(nx) * ny);

  Mat2 stored = Mat2::Zero();
  for (int n = -n_max; n <= n_max; ++n)
    for (int m = -m_max; m <= m_max; ++m) stored += out.povm_element(m, n);
  out.sink_element = out.gram_total - stored;
  return out;
}

double completeness_check(const KrausSet& kraus) {
  return (kraus.gram_total - Mat2::Identity()).norm();
}

double completeness_check(const KrausSet& kraus, int m_bound, int n_bound) {
  if (m_bound > kraus.m_max() || n_bound > kraus.n_max())
    throw ValidationError("[povm] completeness bound exceeds stored truncation");
  Mat2 acc = Mat2::Zero();
  for (int n = -n_bound; n <= n_bound; ++n)
    for (int m = -m_bound; m <= m_bound; ++m) acc += kraus.povm_element(m, n);
  return (acc - Mat2::Identity()).norm();
}

std::vector<Mat2> decompose_line(const std::vector<Mat2>& samples, int m_max) {
  const int n = int(samples.size());
  if (n < 4 * (m_max + 1))
    throw ValidationError("[povm] aliasing guard: need >= 4*(order bound + 1) samples per period");
  std::vector<Mat2> out(std::size_t(2 * m_max + 1), Mat2::Zero());
  for (int m = -m_max; m <= m_max; ++m) {
    Mat2 acc = Mat2::Zero();
    for (int j = 0; j < n; ++j)
      acc += samples[j] * std::polar(1.0, -2.0 * M_PI * m * (j + 0.5) / n);
    out[std::size_t(m + m_max)] = acc / double(n);
  }
  return out;
}

namespace {

json mat2_to_json(const Mat2& m) {
  json entries = json::array();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  return entries;
}

Mat2 mat2_from_json(const json& entries) {
  Mat2 m;
  std::size_t k = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      m(r, c) = cplx(entries[k][0].get<double>(), entries[k][1].get<double>());
      ++k;
    }
  return m;
}

}  // namespace

std::string kraus_to_json(const KrausSet& kraus) {
  json doc;
  doc["kind"] = "kraus_set";
  doc["m_max"] = kraus.m_max();
  doc["n_max"] = kraus.n_max();
  doc["grid_nx"] = kraus.grid_nx;
  doc["grid_ny"] = kraus.grid_ny;
  doc["period_x_um"] = kraus.period_x_um;
  doc["period_y_um"] = kraus.period_y_um;
  doc["completeness_residual"] = completeness_check(kraus);
  doc["gram_total"] = mat2_to_json(kraus.gram_total);
  doc["sink_element"] = mat2_to_json(kraus.sink_element);
  json orders = json::array();
  for (int n = -kraus.n_max(); n <= kraus.n_max(); ++n)
    for (int m = -kraus.m_max(); m <= kraus.m_max(); ++m)
      orders.push_back({{"m", m}, {"n", n}, {"entries", mat2_to_json(kraus.at(m, n))}});
  doc["orders"] = std::move(orders);
  return doc.dump(2);
}

KrausSet kraus_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("[povm] bad kraus document: ") + e.what());
  }
  if (doc.value("kind", "") != "kraus_set")
    throw ValidationError("[povm] not a kraus_set document");
  KrausSet out(doc.at("m_max").get<int>(), doc.at("n_max").get<int>());
  out.grid_nx = doc.at("grid_nx").get<int>();
  out.grid_ny = doc.at("grid_ny").get<int>();
  out.period_x_um = doc.at("period_x_um").get<double>();
  out.period_y_um = doc.at("period_y_um").get<double>();
  out.gram_total = mat2_from_json(doc.at("gram_total"));
  out.sink_element = mat2_from_json(doc.at("sink_element"));
  for (const auto& entry : doc.at("orders"))
    out.at(entry.at("m").get<int>(), entry.at("n").get<int>()) =
        mat2_from_json(entry.at("entries"));
  return out;
}

}  // namespace dualpol
