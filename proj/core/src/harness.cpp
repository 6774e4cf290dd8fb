#include "dualpol/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <nlohmann/json.hpp>
#include <sstream>

#include "dualpol/counting.hpp"
#include "dualpol/errors.hpp"
#include "dualpol/jones_field.hpp"
#include "dualpol/report_io.hpp"
#include "dualpol/version.hpp"

namespace dualpol {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kEtaFloor = 1e-9;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_array(const std::string& value, const std::string& key) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']')
    throw ValidationError("[harness] " + key + " must be a bracketed array");
  std::vector<std::string> out;
  std::stringstream body(value.substr(1, value.size() - 2));
  std::string item;
  while (std::getline(body, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("[harness] " + key + " is not a number: " + value);
  }
}

long long parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("[harness] " + key + " is not an integer: " + value);
  }
}

BellKind parse_bell(const std::string& value) {
  if (value == "phi_plus") return BellKind::PhiPlus;
  if (value == "phi_minus") return BellKind::PhiMinus;
  if (value == "psi_plus") return BellKind::PsiPlus;
  if (value == "psi_minus") return BellKind::PsiMinus;
  throw ValidationError("[polarization] unknown bell kind: " + value);
}

std::string scheme_name(AnalyzerScheme s) {
  switch (s) {
    case AnalyzerScheme::Metasurface: return "metasurface";
    case AnalyzerScheme::Sequential: return "sequential";
    case AnalyzerScheme::BellParity: return "bell_parity";
  }
  return "?";
}

std::string with_hash(const std::string& json_text, const std::string& hash) {
  json doc = json::parse(json_text);
  doc["config_hash"] = hash;
  return doc.dump(2);
}

void write_out(const std::string& out_dir, const std::string& filename, const std::string& body) {
  fs::create_directories(out_dir);
  write_text_file((fs::path(out_dir) / filename).string(), body);
}

json manifest_base(const ExperimentConfig& config, const std::string& command) {
  json doc;
  doc["kind"] = "run_manifest";
  doc["command"] = command;
  doc["name"] = config.name;
  doc["config_hash"] = config.config_hash;
  doc["seed"] = config.seed;
  doc["tool_version"] = kToolVersion;
  doc["constants_version"] = kConstantsVersion;
  return doc;
}

struct BuiltDevice {
  KrausSet kraus;
  PortAssignment ports;
  Visibilities visibilities;
  double completeness = 0.0;
};

BuiltDevice build_device(const ExperimentConfig& config) {
  const JonesField field =
      sample_field(config.profile, config.samples_per_period, config.samples_per_period);
  KrausSet kraus = kraus_decompose(field, config.order_bound, config.order_bound);
  PortAssignment ports = PortAssignment::four_port_default();
  const double completeness = completeness_check(kraus);
  Visibilities vis = calibrate_visibilities(kraus, ports);
  return {std::move(kraus), std::move(ports), vis, completeness};
}

Visibilities unit_visibilities() { return Visibilities{1.0, 1.0, 1.0}; }

/// Witness report from exact probabilities (no sampling).
WitnessReport exact_report(const JointDistribution& dist, const Visibilities& vis_a,
                           const Visibilities& vis_b) {
  const ExactCorrelators c = exact_correlators(dist);
  WitnessReport report;
  report.c_z_obs = c.c_z;
  report.c_y_obs = c.c_y;
  report.eta_z_a = vis_a.eta_z;
  report.eta_y_a = vis_a.eta_y;
  report.eta_z_b = vis_b.eta_z;
  report.eta_y_b = vis_b.eta_y;
  const WitnessValue wv = witness(c.c_z, c.c_y, vis_a, vis_b);
  report.w_paper = wv.w_paper;
  report.w_sep_aux = wv.w_sep_aux;
  report.c_z_corr = wv.c_z_corr;
  report.c_y_corr = wv.c_y_corr;
  report.verdict_paper = wv.verdict_paper;
  report.verdict_aux = wv.verdict_aux;
  report.verdict = wv.verdict_aux;
  report.over_correction = wv.over_correction;
  return report;
}

/// Pair count for SE(W_aux) <= epsilon from the exact distribution
/// (asymptotic per-event variance; used by the sweep table).
struct ExactResource {
  bool unbounded = false;
  std::string flag;
  long long n_required = 0;
};

ExactResource exact_n_required(const JointDistribution& dist, const Visibilities& vis,
                               double epsilon) {
  ExactResource out;
  const ExactCorrelators c = exact_correlators(dist);
  const double coinc = c.coincidence_probability;
  if (!(coinc > 0.0) || !c.c_z || !c.c_y) {
    out.unbounded = true;
    out.flag = "no_signal";
    return out;
  }
  const double ez = vis.eta_z.value_or(0.0), ey = vis.eta_y.value_or(0.0);
  if (std::abs(ez) < kEtaFloor) {
    out.unbounded = true;
    out.flag = "eta_z_zero";
    return out;
  }
  if (std::abs(ey) < kEtaFloor) {
    out.unbounded = true;
    out.flag = "eta_y_zero";
    return out;
  }
  double zym = 0.0;
  for (int i = 0; i < dist.na; ++i)
    for (int j = 0; j < dist.nb; ++j) {
      const auto pz = dist.parity_z(i, j);
      const auto py = dist.parity_y(i, j);
      if (pz && py) zym += double(*pz * *py) * dist.cell(i, j);
    }
  zym /= coinc;
  const double gz = 1.0 / (ez * ez), gy = 1.0 / (ey * ey);
  const double var1 = gz * gz * (1.0 - *c.c_z * *c.c_z) + gy * gy * (1.0 - *c.c_y * *c.c_y) +
                      2.0 * gz * gy * (zym - *c.c_z * *c.c_y);
  out.n_required = (long long)(std::ceil(std::max(var1, 0.0) / (coinc * epsilon * epsilon)));
  return out;
}

}  // namespace

TwoQubitState ExperimentConfig::make_state() const {
  if (state_kind == "bell") return bell_state(bell_kind);
  if (state_kind == "werner") return werner_state(werner_p, bell_kind);
  if (state_kind == "matrix") {
    if (state_matrix.size() != 32)
      throw ValidationError("[polarization] state matrix needs 32 reals (4x4 complex, row-major)");
    Mat4 rho;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        rho(r, c) = cplx(state_matrix[2 * (std::size_t(4) * r + c)],
                         state_matrix[2 * (std::size_t(4) * r + c) + 1]);
    return TwoQubitState(rho);
  }
  throw ValidationError("[polarization] unknown state kind: " + state_kind);
}

AnalyzerModel ExperimentConfig::make_metasurface_arm(bool arm_b) const {
  const BuiltDevice device = build_device(*this);
  return AnalyzerModel::metasurface(device.kraus, device.ports,
                                    arm_b ? efficiency_b : efficiency_a,
                                    arm_b ? dark_b : dark_a);
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  config.raw_text = text;
  config.config_hash = hex64(fnv1a64(text));

  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("[harness] line " + std::to_string(line_no) +
                            ": expected key = value, got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qkey = section.empty() ? key : section + "." + key;

    if (qkey == "experiment.name") {
      config.name = value;
    } else if (qkey == "profile.period_x_um") {
      config.profile.period_x_um = parse_double(value, qkey);
    } else if (qkey == "profile.period_y_um") {
      config.profile.period_y_um = parse_double(value, qkey);
    } else if (qkey == "profile.depth_z") {
      config.profile.depth_z = parse_double(value, qkey);
    } else if (qkey == "profile.depth_y") {
      config.profile.depth_y = parse_double(value, qkey);
    } else if (qkey == "profile.shape") {
      if (value == "sawtooth")
        config.profile.shape = ProfileShape::SawtoothRamp;
      else if (value == "custom")
        config.profile.shape = ProfileShape::CustomSamples;
      else
        throw ValidationError("[metasurface] unknown profile shape: " + value);
    } else if (qkey == "profile.custom_x" || qkey == "profile.custom_y") {
      auto& dst = (qkey == "profile.custom_x") ? config.profile.custom_x : config.profile.custom_y;
      dst.clear();
      for (const auto& item : split_array(value, qkey)) dst.push_back(parse_double(item, qkey));
    } else if (qkey == "profile.samples_per_period") {
      config.samples_per_period = int(parse_int(value, qkey));
    } else if (qkey == "profile.order_bound") {
      config.order_bound = int(parse_int(value, qkey));
    } else if (qkey == "state.kind") {
      config.state_kind = value;
    } else if (qkey == "state.bell") {
      config.bell_kind = parse_bell(value);
    } else if (qkey == "state.werner_p") {
      config.werner_p = parse_double(value, qkey);
    } else if (qkey == "state.matrix") {
      config.state_matrix.clear();
      for (const auto& item : split_array(value, qkey))
        config.state_matrix.push_back(parse_double(item, qkey));
    } else if (qkey == "analyzers.scheme") {
      if (value == "metasurface")
        config.scheme = AnalyzerScheme::Metasurface;
      else if (value == "sequential")
        config.scheme = AnalyzerScheme::Sequential;
      else if (value == "bell_parity")
        config.scheme = AnalyzerScheme::BellParity;
      else
        throw ValidationError("[witness] unknown analyzer scheme: " + value);
    } else if (qkey == "analyzers.visibility") {
      config.visibility = parse_double(value, qkey);
    } else if (qkey == "analyzers.efficiency_a") {
      config.efficiency_a = parse_double(value, qkey);
    } else if (qkey == "analyzers.efficiency_b") {
      config.efficiency_b = parse_double(value, qkey);
    } else if (qkey == "analyzers.dark_a") {
      config.dark_a = parse_double(value, qkey);
    } else if (qkey == "analyzers.dark_b") {
      config.dark_b = parse_double(value, qkey);
    } else if (qkey == "run.n_pairs") {
      config.n_pairs = parse_int(value, qkey);
    } else if (qkey == "run.seed") {
      config.seed = std::uint64_t(parse_int(value, qkey));
    } else if (qkey == "run.bootstrap") {
      config.bootstrap = int(parse_int(value, qkey));
    } else if (qkey == "run.threads") {
      config.threads = int(parse_int(value, qkey));
    } else if (qkey == "run.replicates") {
      config.replicates = int(parse_int(value, qkey));
    } else if (qkey == "compare.epsilon") {
      config.compare_epsilon = parse_double(value, qkey);
    } else if (qkey == "compare.schemes") {
      config.compare_schemes = split_array(value, qkey);
    } else if (qkey == "sweep.depths") {
      config.sweep_depths.clear();
      for (const auto& item : split_array(value, qkey))
        config.sweep_depths.push_back(parse_double(item, qkey));
    } else if (qkey == "sweep.epsilon") {
      config.sweep_epsilon = parse_double(value, qkey);
    } else {
      throw ValidationError("[harness] unknown configuration key: " + qkey);
    }
  }

  // Cross-field validation, owned by the respective modules.
  config.profile.validate();
  if (config.samples_per_period < 32)
    throw ValidationError("[povm] profile.samples_per_period must be >= 32");
  if (config.order_bound < 1) throw ValidationError("[povm] profile.order_bound must be >= 1");
  if (config.state_kind == "werner" && !(config.werner_p >= 0.0 && config.werner_p <= 1.0))
    throw ValidationError("[polarization] state.werner_p out of range [0,1]: " +
                          fmt_double(config.werner_p));
  if (!(config.visibility >= 0.0 && config.visibility <= 1.0))
    throw ValidationError("[witness] analyzers.visibility out of range [0,1]");
  for (double e : {config.efficiency_a, config.efficiency_b})
    if (!(e >= 0.0 && e <= 1.0))
      throw ValidationError("[witness] analyzer efficiency out of range [0,1]");
  for (double d : {config.dark_a, config.dark_b})
    if (!(d >= 0.0 && d < 1.0))
      throw ValidationError("[witness] analyzer dark-count out of range [0,1)");
  if (config.n_pairs < 1) throw ValidationError("[harness] run.n_pairs must be >= 1");
  if (config.bootstrap < 0) throw ValidationError("[harness] run.bootstrap must be >= 0");
  if (config.threads < 1) throw ValidationError("[harness] run.threads must be >= 1");
  if (config.replicates < 50) throw ValidationError("[harness] run.replicates must be >= 50");
  for (double d : config.sweep_depths)
    if (!(d >= 0.0 && d <= 1.0))
      throw ValidationError("[metasurface] sweep depth out of range [0,1]: " + fmt_double(d));
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config_text(read_text_file(path));
}

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides) {
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.replicates) {
    if (*overrides.replicates < 50)
      throw ValidationError("[harness] --replicates must be >= 50");
    config.replicates = *overrides.replicates;
  }
  if (overrides.threads) {
    if (*overrides.threads < 1) throw ValidationError("[harness] --threads must be >= 1");
    config.threads = *overrides.threads;
  }
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futures;
  for (int t = 0; t < threads; ++t)
    futures.push_back(std::async(std::launch::async, [&, t]() {
      for (int i = t; i < n; i += threads) fn(i);
    }));
  for (auto& f : futures) f.get();
}

void cmd_povm(const ExperimentConfig& config, const std::string& out_dir) {
  const JonesField field =
      sample_field(config.profile, config.samples_per_period, config.samples_per_period);
  const KrausSet kraus = kraus_decompose(field, config.order_bound, config.order_bound);
  write_out(out_dir, "field.json", with_hash(field_to_json(field), config.config_hash) + "\n");
  write_out(out_dir, "kraus.json", with_hash(kraus_to_json(kraus), config.config_hash) + "\n");
  json manifest = manifest_base(config, "povm");
  manifest["completeness_residual"] = completeness_check(kraus);
  write_out(out_dir, "manifest.json", manifest.dump(2) + "\n");
}

void cmd_calibrate(const ExperimentConfig& config, const std::string& out_dir) {
  const BuiltDevice device = build_device(config);
  write_out(out_dir, "calibration.txt",
            calibration_report(device.visibilities, device.completeness, config.config_hash)
                .emit());
  json manifest = manifest_base(config, "calibrate");
  write_out(out_dir, "manifest.json", manifest.dump(2) + "\n");
}

namespace {

struct RunSetup {
  std::optional<AnalyzerModel> arm_a, arm_b;  // per-arm schemes
  Visibilities vis_a, vis_b;
  std::optional<double> completeness;  // metasurface only
};

RunSetup make_setup(const ExperimentConfig& config) {
  RunSetup setup;
  switch (config.scheme) {
    case AnalyzerScheme::Metasurface: {
      const BuiltDevice device = build_device(config);
      setup.arm_a = AnalyzerModel::metasurface(device.kraus, device.ports, config.efficiency_a,
                                               config.dark_a);
      setup.arm_b = AnalyzerModel::metasurface(device.kraus, device.ports, config.efficiency_b,
                                               config.dark_b);
      setup.vis_a = setup.vis_b = device.visibilities;
      setup.completeness = device.completeness;
      break;
    }
    case AnalyzerScheme::BellParity: {
      if (config.dark_a != 0.0 || config.dark_b != 0.0)
        throw ValidationError("[witness] the Bell-parity reference has no per-port dark-count model");
      setup.arm_a = AnalyzerModel::bell_parity(config.efficiency_a);
      setup.arm_b = AnalyzerModel::bell_parity(config.efficiency_b);
      setup.vis_a = setup.vis_b = unit_visibilities();
      break;
    }
    case AnalyzerScheme::Sequential: {
      if (config.efficiency_a != 1.0 || config.efficiency_b != 1.0 || config.dark_a != 0.0 ||
          config.dark_b != 0.0)
        throw ValidationError(
            "[witness] the sequential protocol models ideal detectors; set efficiency 1, dark 0");
      setup.vis_a = setup.vis_b =
          Visibilities{config.visibility, config.visibility, 1.0};
      break;
    }
  }
  return setup;
}

}  // namespace

void cmd_witness(const ExperimentConfig& config, const std::string& out_dir) {
  const TwoQubitState rho = config.make_state();
  const RunSetup setup = make_setup(config);
  if (config.scheme == AnalyzerScheme::Sequential) {
    const AnalyzerModel za = AnalyzerModel::sequential(SeqBasis::Z, config.visibility);
    const AnalyzerModel ya = AnalyzerModel::sequential(SeqBasis::Y, config.visibility);
    const JointDistribution dz = joint_probabilities(rho, za, za);
    const JointDistribution dy = joint_probabilities(rho, ya, ya);
    write_out(out_dir, "exact_probabilities_z.json",
              joint_distribution_to_json(dz, config.config_hash) + "\n");
    write_out(out_dir, "exact_probabilities_y.json",
              joint_distribution_to_json(dy, config.config_hash) + "\n");
    const ExactCorrelators cz = exact_correlators(dz);
    const ExactCorrelators cy = exact_correlators(dy);
    WitnessReport report = exact_report(dz, setup.vis_a, setup.vis_b);
    report.c_z_obs = cz.c_z;
    report.c_y_obs = cy.c_y;
    const WitnessValue wv = witness(cz.c_z, cy.c_y, setup.vis_a, setup.vis_b);
    report.w_paper = wv.w_paper;
    report.w_sep_aux = wv.w_sep_aux;
    report.c_z_corr = wv.c_z_corr;
    report.c_y_corr = wv.c_y_corr;
    report.verdict_paper = wv.verdict_paper;
    report.verdict_aux = wv.verdict_aux;
    report.verdict = wv.verdict_aux;
    write_out(out_dir, "witness_report.json",
              witness_report_to_json(report, config.config_hash) + "\n");
  } else {
    const JointDistribution dist = joint_probabilities(rho, *setup.arm_a, *setup.arm_b);
    write_out(out_dir, "exact_probabilities.json",
              joint_distribution_to_json(dist, config.config_hash) + "\n");
    const WitnessReport report = exact_report(dist, setup.vis_a, setup.vis_b);
    write_out(out_dir, "witness_report.json",
              witness_report_to_json(report, config.config_hash) + "\n");
    if (setup.completeness)
      write_out(out_dir, "calibration.txt",
                calibration_report(setup.vis_a, *setup.completeness, config.config_hash).emit());
  }
  json manifest = manifest_base(config, "witness");
  write_out(out_dir, "manifest.json", manifest.dump(2) + "\n");
}

void cmd_montecarlo(const ExperimentConfig& config, const std::string& out_dir) {
  const TwoQubitState rho = config.make_state();
  const RunSetup setup = make_setup(config);
  WitnessReport report;
  if (config.scheme == AnalyzerScheme::Sequential) {
    const SequentialResult result = sequential_run(rho, config.n_pairs, config.visibility,
                                                   config.seed, config.bootstrap);
    report = result.report;
    write_out(out_dir, "coincidence_table_z.json",
              table_to_json(result.z_table, config.config_hash) + "\n");
    write_out(out_dir, "coincidence_table_y.json",
              table_to_json(result.y_table, config.config_hash) + "\n");
    write_out(out_dir, "exact_probabilities_z.json",
              joint_distribution_to_json(result.z_table.semantics, config.config_hash) + "\n");
    write_out(out_dir, "exact_probabilities_y.json",
              joint_distribution_to_json(result.y_table.semantics, config.config_hash) + "\n");
  } else {
    const CoincidenceTable table =
        simulate_counts(rho, *setup.arm_a, *setup.arm_b, config.n_pairs, config.seed);
    report = estimate_from_counts(table, setup.vis_a, setup.vis_b, config.bootstrap, config.seed);
    write_out(out_dir, "coincidence_table.json",
              table_to_json(table, config.config_hash) + "\n");
    write_out(out_dir, "exact_probabilities.json",
              joint_distribution_to_json(table.semantics, config.config_hash) + "\n");
  }
  if (setup.completeness)
    write_out(out_dir, "calibration.txt",
              calibration_report(setup.vis_a, *setup.completeness, config.config_hash).emit());
  write_out(out_dir, "witness_report.json",
            witness_report_to_json(report, config.config_hash) + "\n");
  json manifest = manifest_base(config, "montecarlo");
  manifest["n_pairs"] = config.n_pairs;
  manifest["scheme"] = scheme_name(config.scheme);
  write_out(out_dir, "manifest.json", manifest.dump(2) + "\n");
}

void cmd_compare(const ExperimentConfig& config, const std::string& out_dir) {
  const TwoQubitState rho = config.make_state();
  std::vector<SchemeSpec> specs;
  for (const auto& name : config.compare_schemes) {
    SchemeSpec spec;
    spec.label = name;
    if (name == "sequential") {
      spec.kind = SchemeKind::SequentialSharp;
      spec.visibility = config.visibility;
    } else if (name == "bell_parity") {
      spec.kind = SchemeKind::IdealBellParity;
    } else if (name == "metasurface") {
      spec.kind = SchemeKind::Metasurface;
      spec.profile = config.profile;
      spec.samples_per_period = config.samples_per_period;
      spec.order_bound = config.order_bound;
    } else {
      throw ValidationError("[witness] unknown compare scheme: " + name);
    }
    specs.push_back(std::move(spec));
  }
  const std::vector<ResourceRow> rows =
      resource_compare(rho, config.compare_epsilon, specs, config.seed, config.replicates);
  write_out(out_dir, "compare.csv", resource_table_to_csv(rows, config.config_hash));
  json manifest = manifest_base(config, "compare");
  manifest["epsilon"] = config.compare_epsilon;
  manifest["replicates"] = config.replicates;
  write_out(out_dir, "manifest.json", manifest.dump(2) + "\n");
}

void cmd_sweep(const ExperimentConfig& config, const std::string& out_dir) {
  const TwoQubitState rho = config.make_state();
  std::vector<std::pair<double, double>> points;
  for (double bz : config.sweep_depths)
    for (double by : config.sweep_depths) points.push_back({bz, by});
  std::sort(points.begin(), points.end());

  struct Row {
    double bz = 0.0, by = 0.0;
    std::string flag;
    std::optional<double> eta_z, eta_y, capture, eta_sq;
    std::optional<long long> n_required;
  };
  std::vector<Row> rows(points.size());

  parallel_for(int(points.size()), config.threads, [&](int idx) {
    Row& row = rows[std::size_t(idx)];
    row.bz = points[std::size_t(idx)].first;
    row.by = points[std::size_t(idx)].second;
    PhaseProfile profile = config.profile;
    profile.depth_z = row.bz;
    profile.depth_y = row.by;
    const JonesField field =
        sample_field(profile, config.samples_per_period, config.samples_per_period);
    const KrausSet kraus = kraus_decompose(field, config.order_bound, config.order_bound);
    const PortAssignment ports = PortAssignment::four_port_default();
    Visibilities vis;
    try {
      vis = calibrate_visibilities(kraus, ports);
    } catch (const NoSignalError&) {
      row.flag = "no_signal";
      return;
    }
    row.eta_z = vis.eta_z;
    row.eta_y = vis.eta_y;
    row.capture = vis.capture;
    if (vis.eta_z && vis.eta_y) row.eta_sq = *vis.eta_z * *vis.eta_z + *vis.eta_y * *vis.eta_y;
    if (config.sweep_epsilon) {
      const AnalyzerModel arm = AnalyzerModel::metasurface(kraus, ports);
      const ExactResource res =
          exact_n_required(joint_probabilities(rho, arm, arm), vis, *config.sweep_epsilon);
      if (res.unbounded)
        row.flag = res.flag;
      else
        row.n_required = res.n_required;
    }
  });

  std::ostringstream csv;
  csv << "# config_hash = " << config.config_hash << "\n";
  csv << "beta_z,beta_y,eta_z,eta_y,capture,eta_sq_sum,n_required,flag\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string("absent");
  };
  for (const Row& row : rows) {
    csv << fmt_double(row.bz) << ',' << fmt_double(row.by) << ',' << opt(row.eta_z) << ','
        << opt(row.eta_y) << ',' << opt(row.capture) << ',' << opt(row.eta_sq) << ',';
    if (row.n_required)
      csv << *row.n_required;
    else
      csv << (config.sweep_epsilon ? "unbounded" : "absent");
    csv << ',' << row.flag << "\n";
  }
  write_out(out_dir, "sweep.csv", csv.str());
  json manifest = manifest_base(config, "sweep");
  manifest["points"] = points.size();
  write_out(out_dir, "manifest.json", manifest.dump(2) + "\n");
}

void cmd_verify(const ExperimentConfig& config, const std::string& out_dir) {
  const fs::path dir(out_dir);
  if (!fs::exists(dir)) throw std::runtime_error("[harness] output directory missing: " + out_dir);
  int checked = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const std::string body = read_text_file(entry.path().string());
    std::string embedded;
    if (name.ends_with(".json")) {
      json doc = json::parse(body, nullptr, false);
      if (doc.is_discarded() || !doc.contains("config_hash")) continue;
      embedded = doc["config_hash"].get<std::string>();
    } else if (name.ends_with(".csv")) {
      const std::string prefix = "# config_hash = ";
      if (body.rfind(prefix, 0) != 0) continue;
      embedded = body.substr(prefix.size(), body.find('\n') - prefix.size());
    } else if (name.ends_with(".txt")) {
      const FlatDoc doc = FlatDoc::parse(body);
      const std::string* value = doc.find("config_hash");
      if (!value) continue;
      embedded = *value;
    } else {
      continue;
    }
    ++checked;
    if (embedded != config.config_hash)
      throw std::runtime_error("[harness] config hash mismatch in " + name + ": " + embedded +
                               " != " + config.config_hash);
  }
  if (checked == 0)
    throw std::runtime_error("[harness] no hashed reports found in " + out_dir);
}

}  // namespace dualpol
