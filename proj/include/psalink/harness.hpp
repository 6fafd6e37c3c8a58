#ifndef PSALINK_HARNESS_HPP
#define PSALINK_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "psalink/capacity.hpp"
#include "psalink/fec.hpp"
#include "psalink/linkmodel.hpp"
#include "psalink/metrics.hpp"

namespace psalink {

/// Everything a command needs, with defaults mirroring the measured
/// 10.52-GBd link. Values come from presets, then a config file, then CLI
/// flag overrides; `validate()` reports every problem before compute starts.
struct ExperimentConfig {
  std::string receiver = "psa";  // psa | edfa | ideal-sq
  double nf_psa_db = 1.2;
  double nf_edfa_db = 3.7;
  double pump_suppression_db = 12.0;
  double wavelength_nm = 1550.0;
  double symbol_rate_baud = 10.52e9;

  PenaltyLedger ledger = measured_system_ledger();
  std::vector<std::string> penalties = residual_penalty_labels();  // applied in sweeps

  int frame = 64800;  // 64800 | 16200
  bool ldpc_only = false;
  int max_iter = 50;
  std::string decoder = "sum-product";  // sum-product | min-sum

  std::vector<double> ppb_grid = {0.8, 0.9, 1.0, 1.1, 1.2, 1.3,
                                  1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  std::vector<double> es_n0_db_grid = {0.4, 0.6, 0.8, 1.0, 1.2};
  StopRule stop{12, 20'000'000};

  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0 = hardware concurrency
  std::string out_dir = ".";

  std::vector<std::string> models = {"psa",          "psa-rx", "edfa", "sq",
                                     "ppm-envelope", "ppm64",  "gordon"};
  std::size_t curve_points = 200;
  double curve_n_lo = 1e-3;
  double curve_n_hi = 1e3;

  double gmi_target_rate = 1.0;
  std::size_t gmi_symbols = 1u << 20;

  ReceiverModel receiver_model() const;
  CodeSpec code_spec() const;
  unsigned effective_workers() const;

  /// Channel SNR per total photon-per-information-bit, including the FEC
  /// overhead, the receiver budget split, and the enabled ledger penalties.
  double snr_per_ppb() const;
};

/// Named built-in configurations: fig2-psa, fig2-edfa, fig3, gmi, budget.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Applies `key = value` lines (flat keys; '#' comments). Unknown keys and
/// malformed values raise ConfigError naming the offender.
void apply_config_file(ExperimentConfig& config, const std::string& path);
void apply_key_value(ExperimentConfig& config, const std::string& key,
                     const std::string& value);

/// Full validation; throws ConfigError listing every problem found.
void validate(const ExperimentConfig& config);

/// Grid helper: either "start:step:stop" (inclusive) or a comma list.
std::vector<double> parse_grid(const std::string& text);

// Commands. Each validates the config, writes deterministic CSV files into
// config.out_dir, and returns the paths written.
std::vector<std::string> cmd_capacity_curves(const ExperimentConfig& config);
std::vector<std::string> cmd_ber_sweep(const ExperimentConfig& config);
std::vector<std::string> cmd_gmi_sweep(const ExperimentConfig& config);
std::vector<std::string> cmd_fec_waterfall(const ExperimentConfig& config);

/// Prints the power-budget and penalty table, with the predicted sensitivity
/// against both the Shannon-limited point and the code threshold.
void cmd_budget(const ExperimentConfig& config, std::ostream& out);

/// Es/N0 (dB) at which the bundled normal-frame chain reaches post-FEC
/// BER < 1e-6, measured once with fec-waterfall and pinned here; used by the
/// budget report's code-threshold prediction.
double dvbs2_r12_qpsk_threshold_es_n0_db();

}  // namespace psalink

#endif
