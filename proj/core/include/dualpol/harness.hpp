#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dualpol/analyzer.hpp"
#include "dualpol/phase_profile.hpp"
#include "dualpol/resource.hpp"
#include "dualpol/two_qubit.hpp"

namespace dualpol {

enum class AnalyzerScheme { Metasurface, Sequential, BellParity };

/// Parsed experiment configuration. One flat-section text document drives
/// every subcommand; no environment variables.
struct ExperimentConfig {
  std::string raw_text;
  std::string config_hash;  // fnv1a64 of the raw bytes, hex
  std::string name = "run";

  // [profile]
  PhaseProfile profile;
  int samples_per_period = 64;
  int order_bound = 8;

  // [state]
  std::string state_kind = "bell";  // bell | werner | matrix
  BellKind bell_kind = BellKind::PhiPlus;
  double werner_p = 1.0;
  std::vector<double> state_matrix;  // 32 reals, row-major [re, im]

  // [analyzers]
  AnalyzerScheme scheme = AnalyzerScheme::Metasurface;
  double visibility = 1.0;
  double efficiency_a = 1.0, efficiency_b = 1.0;
  double dark_a = 0.0, dark_b = 0.0;

  // [run]
  long long n_pairs = 100000;
  std::uint64_t seed = 1;
  int bootstrap = 1000;
  int threads = 1;
  int replicates = 256;

  // [compare]
  double compare_epsilon = 0.01;
  std::vector<std::string> compare_schemes = {"sequential", "bell_parity"};

  // [sweep]
  std::vector<double> sweep_depths = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::optional<double> sweep_epsilon;

  TwoQubitState make_state() const;
  AnalyzerModel make_metasurface_arm(bool arm_b) const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Overrides applied after parsing (CLI flags win over the file).
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::optional<int> threads;
};
void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides);

// Subcommand bodies. Each writes its report files under `out_dir` with the
// config hash embedded; all outputs are byte-deterministic for a fixed
// (config, seed) at any thread count.
void cmd_povm(const ExperimentConfig& config, const std::string& out_dir);
void cmd_calibrate(const ExperimentConfig& config, const std::string& out_dir);
void cmd_witness(const ExperimentConfig& config, const std::string& out_dir);
void cmd_montecarlo(const ExperimentConfig& config, const std::string& out_dir);
void cmd_compare(const ExperimentConfig& config, const std::string& out_dir);
void cmd_sweep(const ExperimentConfig& config, const std::string& out_dir);
/// Re-checks the embedded config hash of every report in `out_dir`.
/// Throws std::runtime_error on any mismatch.
void cmd_verify(const ExperimentConfig& config, const std::string& out_dir);

/// Deterministic parallel map: fn(i) for i in [0, n), results merged by
/// index regardless of the thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace dualpol
