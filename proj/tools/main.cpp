// Batch front end for the dual-basis analyzer simulator. Every subcommand is
// driven by one configuration file and writes deterministic, hash-stamped
// reports; see README for the configuration reference.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "dualpol/errors.hpp"
#include "dualpol/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  dualpol::ConfigOverrides overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_replicates = false) {
  cmd->add_option("--config", args.config_path, "experiment configuration file")->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", [&args](const CLI::results_t& values) {
    args.overrides.seed = std::stoull(values[0]);
    return true;
  }, "override run.seed");
  cmd->add_option("--threads", [&args](const CLI::results_t& values) {
    args.overrides.threads = std::stoi(values[0]);
    return true;
  }, "override run.threads");
  if (needs_replicates)
    cmd->add_option("--replicates", [&args](const CLI::results_t& values) {
      args.overrides.replicates = std::stoi(values[0]);
      return true;
    }, "override run.replicates");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-basis metasurface polarization analyzer simulator"};
  app.require_subcommand(1);

  CommonArgs povm_args, calibrate_args, witness_args, montecarlo_args, compare_args, sweep_args,
      verify_args;
  add_common(app.add_subcommand("povm", "decompose the device into diffraction-order operators"),
             povm_args);
  add_common(app.add_subcommand("calibrate", "visibility and capture calibration report"),
             calibrate_args);
  add_common(app.add_subcommand("witness", "exact-probability witness evaluation"), witness_args);
  add_common(app.add_subcommand("montecarlo", "seeded coincidence sampling and estimation"),
             montecarlo_args);
  add_common(app.add_subcommand("compare", "pairs-required comparison across schemes"),
             compare_args, true);
  add_common(app.add_subcommand("sweep", "visibility trade-off table over modulation depths"),
             sweep_args);
  add_common(app.add_subcommand("verify", "re-check the config hash embedded in reports"),
             verify_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const auto run = [&](const CommonArgs& args, auto command) {
    dualpol::ExperimentConfig config = dualpol::load_config(args.config_path);
    dualpol::apply_overrides(config, args.overrides);
    command(config, args.out_dir);
  };

  try {
    if (app.got_subcommand("povm")) run(povm_args, dualpol::cmd_povm);
    if (app.got_subcommand("calibrate")) run(calibrate_args, dualpol::cmd_calibrate);
    if (app.got_subcommand("witness")) run(witness_args, dualpol::cmd_witness);
    if (app.got_subcommand("montecarlo")) run(montecarlo_args, dualpol::cmd_montecarlo);
    if (app.got_subcommand("compare")) run(compare_args, dualpol::cmd_compare);
    if (app.got_subcommand("sweep")) run(sweep_args, dualpol::cmd_sweep);
    if (app.got_subcommand("verify")) run(verify_args, dualpol::cmd_verify);
  } catch (const dualpol::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}
