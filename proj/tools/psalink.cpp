// Command-line front end: capacity-curves, ber-sweep, budget, gmi-sweep,
// fec-waterfall. Exit codes: 0 success, 2 configuration error, 3 runtime
// error.
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psalink/errors.hpp"
#include "psalink/harness.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string preset_name;
  std::vector<std::string> overrides;  // key=value pairs
  bool have_seed = false;
  std::uint64_t seed = 0;
  bool have_workers = false;
  unsigned workers = 0;
  std::string out_dir;
  bool ldpc_only = false;
  int frame = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "Config file (key = value lines)");
  cmd->add_option("--preset", flags->preset_name, "Built-in preset name");
  cmd->add_option("--set", flags->overrides, "Extra key=value overrides");
  cmd->add_option("--seed", flags->seed, "Random seed")->each([flags](const std::string&) {
    flags->have_seed = true;
  });
  cmd->add_option("--workers", flags->workers, "Worker thread count (0 = hardware)")
      ->each([flags](const std::string&) { flags->have_workers = true; });
  cmd->add_option("--out", flags->out_dir, "Output directory");
  cmd->add_flag("--ldpc-only", flags->ldpc_only, "Drop the outer BCH code");
  cmd->add_option("--frame", flags->frame, "LDPC frame length")
      ->check(CLI::IsMember({64800, 16200}));
}

psalink::ExperimentConfig build_config(const CommonFlags& flags) {
  psalink::ExperimentConfig cfg;
  if (!flags.preset_name.empty()) cfg = psalink::preset(flags.preset_name);
  if (!flags.config_path.empty()) psalink::apply_config_file(cfg, flags.config_path);
  for (const auto& kv : flags.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw psalink::ConfigError("--set expects key=value, got: " + kv);
    }
    psalink::apply_key_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (flags.have_seed) cfg.seed = flags.seed;
  if (flags.have_workers) cfg.workers = flags.workers;
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (flags.ldpc_only) cfg.ldpc_only = true;
  if (flags.frame != 0) cfg.frame = flags.frame;
  return cfg;
}

void report_files(const std::vector<std::string>& files) {
  for (const auto& f : files) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensitivity toolkit for PSA/EDFA pre-amplified coherent receivers"};
  app.require_subcommand(1);

  CommonFlags flags;
  int command = 0;
  add_common_flags(
      app.add_subcommand("capacity-curves", "Analytic sensitivity curves and crossings")
          ->callback([&] { command = 1; }),
      &flags);
  add_common_flags(
      app.add_subcommand("ber-sweep", "Monte Carlo BER vs received photons per bit")
          ->callback([&] { command = 2; }),
      &flags);
  add_common_flags(app.add_subcommand("budget", "Power budget and penalty table")
                       ->callback([&] { command = 3; }),
                   &flags);
  add_common_flags(
      app.add_subcommand("gmi-sweep", "GMI vs PPB and the ideal-FEC sensitivity")
          ->callback([&] { command = 4; }),
      &flags);
  add_common_flags(
      app.add_subcommand("fec-waterfall", "Coded BER vs Es/N0, direct SNR domain")
          ->callback([&] { command = 5; }),
      &flags);

  CLI11_PARSE(app, argc, argv);

  try {
    const psalink::ExperimentConfig cfg = build_config(flags);
    switch (command) {
      case 1: report_files(psalink::cmd_capacity_curves(cfg)); break;
      case 2: report_files(psalink::cmd_ber_sweep(cfg)); break;
      case 3: psalink::cmd_budget(cfg, std::cout); break;
      case 4: report_files(psalink::cmd_gmi_sweep(cfg)); break;
      case 5: report_files(psalink::cmd_fec_waterfall(cfg)); break;
    }
  } catch (const psalink::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
