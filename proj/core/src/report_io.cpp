#include "dualpol/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "dualpol/errors.hpp"

namespace dualpol {

using nlohmann::json;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)value);
  return buf;
}

void FlatDoc::set(const std::string& key, const std::string& value) {
  entries_.push_back({key, value});
}
void FlatDoc::set(const std::string& key, double value) { set(key, fmt_double(value)); }
void FlatDoc::set(const std::string& key, long long value) { set(key, std::to_string(value)); }

const std::string* FlatDoc::find(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

std::string FlatDoc::emit() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
  return out.str();
}

FlatDoc FlatDoc::parse(const std::string& text) {
  FlatDoc doc;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("[harness] bad flat document line: " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    doc.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return doc;
}

FlatDoc calibration_report(const Visibilities& vis, double completeness_residual,
                           const std::string& config_hash) {
  FlatDoc doc;
  doc.set("report", std::string("calibration"));
  doc.set("config_hash", config_hash);
  doc.set("eta_z", vis.eta_z ? fmt_double(*vis.eta_z) : std::string("absent"));
  doc.set("eta_y", vis.eta_y ? fmt_double(*vis.eta_y) : std::string("absent"));
  doc.set("capture", vis.capture);
  doc.set("completeness_residual", completeness_residual);
  return doc;
}

namespace {

json label_to_json(const PortLabel& label) {
  json out;
  out["sx"] = label.sx ? json(*label.sx) : json();
  out["sy"] = label.sy ? json(*label.sy) : json();
  return out;
}

PortLabel label_from_json(const json& j) {
  PortLabel out;
  if (!j.at("sx").is_null()) out.sx = j.at("sx").get<int>();
  if (!j.at("sy").is_null()) out.sy = j.at("sy").get<int>();
  return out;
}

json dist_to_json(const JointDistribution& dist) {
  json out;
  out["pair_level"] = dist.pair_level;
  out["na"] = dist.na;
  out["nb"] = dist.nb;
  json rows = json::array();
  for (int i = 0; i < dist.na; ++i) {
    json row = json::array();
    for (int j = 0; j < dist.nb; ++j) row.push_back(dist.cell(i, j));
    rows.push_back(std::move(row));
  }
  out["p"] = std::move(rows);
  out["loss"] = dist.loss;
  json la = json::array(), lb = json::array();
  for (const auto& l : dist.labels_a) la.push_back(label_to_json(l));
  for (const auto& l : dist.labels_b) lb.push_back(label_to_json(l));
  out["labels_a"] = std::move(la);
  out["labels_b"] = std::move(lb);
  out["pair_parity_z"] = dist.pair_parity_z;
  out["pair_parity_y"] = dist.pair_parity_y;
  return out;
}

JointDistribution dist_from_json(const json& j) {
  JointDistribution dist;
  dist.pair_level = j.at("pair_level").get<bool>();
  dist.na = j.at("na").get<int>();
  dist.nb = j.at("nb").get<int>();
  for (int i = 0; i < dist.na; ++i)
    for (int jj = 0; jj < dist.nb; ++jj)
      dist.p[std::size_t(i)][std::size_t(jj)] = j.at("p")[std::size_t(i)][std::size_t(jj)];
  dist.loss = j.at("loss").get<double>();
  for (const auto& l : j.at("labels_a")) dist.labels_a.push_back(label_from_json(l));
  for (const auto& l : j.at("labels_b")) dist.labels_b.push_back(label_from_json(l));
  for (int k = 0; k < 4; ++k) {
    dist.pair_parity_z[std::size_t(k)] = j.at("pair_parity_z")[std::size_t(k)];
    dist.pair_parity_y[std::size_t(k)] = j.at("pair_parity_y")[std::size_t(k)];
  }
  return dist;
}

json opt_to_json(const std::optional<double>& v) { return v ? json(*v) : json(); }

const char* verdict_name(Verdict v) {
  return v == Verdict::EntangledCertified ? "entangled_certified" : "not_certified";
}

}  // namespace

std::string table_to_json(const CoincidenceTable& table, const std::string& config_hash) {
  json doc;
  doc["kind"] = "coincidence_table";
  doc["config_hash"] = config_hash;
  doc["n_pairs"] = table.n_pairs;
  doc["loss_count"] = table.loss_count;
  json rows = json::array();
  for (const auto& row : table.counts) {
    json r = json::array();
    for (long long c : row) r.push_back(c);
    rows.push_back(std::move(r));
  }
  doc["counts"] = std::move(rows);
  doc["semantics"] = dist_to_json(table.semantics);
  return doc.dump(2);
}

CoincidenceTable table_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("[witness] bad coincidence document: ") + e.what());
  }
  if (doc.value("kind", "") != "coincidence_table")
    throw ValidationError("[witness] not a coincidence_table document");
  CoincidenceTable table;
  table.n_pairs = doc.at("n_pairs").get<long long>();
  table.loss_count = doc.at("loss_count").get<long long>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      table.counts[std::size_t(i)][std::size_t(j)] =
          doc.at("counts")[std::size_t(i)][std::size_t(j)];
  table.semantics = dist_from_json(doc.at("semantics"));
  return table;
}

std::string witness_report_to_json(const WitnessReport& report, const std::string& config_hash) {
  json doc;
  doc["kind"] = "witness_report";
  doc["config_hash"] = config_hash;
  doc["c_z_obs"] = opt_to_json(report.c_z_obs);
  doc["c_y_obs"] = opt_to_json(report.c_y_obs);
  doc["c_z_corr"] = opt_to_json(report.c_z_corr);
  doc["c_y_corr"] = opt_to_json(report.c_y_corr);
  doc["eta_z_a"] = opt_to_json(report.eta_z_a);
  doc["eta_y_a"] = opt_to_json(report.eta_y_a);
  doc["eta_z_b"] = opt_to_json(report.eta_z_b);
  doc["eta_y_b"] = opt_to_json(report.eta_y_b);
  doc["w_paper"] = opt_to_json(report.w_paper);
  doc["w_sep_aux"] = opt_to_json(report.w_sep_aux);
  doc["se_c_z"] = opt_to_json(report.se_c_z);
  doc["se_c_y"] = opt_to_json(report.se_c_y);
  doc["se_w_delta"] = opt_to_json(report.se_w_delta);
  doc["se_w_bootstrap"] = opt_to_json(report.se_w_bootstrap);
  doc["se_w"] = opt_to_json(report.se_w);
  doc["w_ci_lo"] = opt_to_json(report.w_ci_lo);
  doc["w_ci_hi"] = opt_to_json(report.w_ci_hi);
  doc["n_pairs"] = report.n_pairs;
  doc["n_used"] = report.n_used;
  doc["verdict_paper"] = verdict_name(report.verdict_paper);
  doc["verdict_aux"] = verdict_name(report.verdict_aux);
  doc["verdict"] = verdict_name(report.verdict);
  doc["over_correction"] = report.over_correction;
  doc["se_insufficient"] = report.se_insufficient;
  return doc.dump(2);
}

std::string joint_distribution_to_json(const JointDistribution& dist,
                                       const std::string& config_hash) {
  json doc;
  doc["kind"] = "exact_probabilities";
  doc["config_hash"] = config_hash;
  doc["table"] = dist_to_json(dist);
  return doc.dump(2);
}

std::string resource_table_to_csv(const std::vector<ResourceRow>& rows,
                                  const std::string& config_hash) {
  std::ostringstream out;
  out << "# config_hash = " << config_hash << "\n";
  out << "scheme,epsilon,flag,n_required_w,n_required_per_correlator,fit_c,fit_exponent,"
         "fit_residual,eta_z,eta_y\n";
  for (const auto& r : rows) {
    out << r.scheme << ',' << fmt_double(r.epsilon) << ','
        << (r.unbounded ? (r.flag.empty() ? "unbounded" : r.flag) : r.flag) << ',';
    if (r.unbounded)
      out << "unbounded,unbounded,";
    else
      out << r.n_required_w << ',' << r.n_required_per_correlator << ',';
    out << fmt_double(r.fit_c) << ',' << fmt_double(r.fit_exponent) << ','
        << fmt_double(r.fit_residual) << ',' << fmt_double(r.eta_z) << ',' << fmt_double(r.eta_y)
        << "\n";
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("[harness] cannot open for write: " + path);
  out << body;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("[harness] cannot open for read: " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace dualpol
