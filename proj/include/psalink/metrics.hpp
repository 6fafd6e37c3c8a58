#ifndef PSALINK_METRICS_HPP
#define PSALINK_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "psalink/linkmodel.hpp"
#include "psalink/types.hpp"

namespace psalink {

/// One Monte Carlo estimate with its Wilson 95% interval.
struct MonteCarloResult {
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
  double ber = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
};

/// Stops a Monte Carlo loop once enough errors have accumulated, with a hard
/// cap on simulated bits. In coded sweeps `min_errors` counts frame errors.
struct StopRule {
  std::uint64_t min_errors = 100;
  std::uint64_t max_bits = 100'000'000;

  void validate() const;  // throws ConfigError when never satisfiable
  bool satisfied(std::uint64_t errors, std::uint64_t bits) const {
    return errors >= min_errors || bits >= max_bits;
  }
};

/// Wilson score interval for a binomial proportion at the given z value.
/// Zero successes still yield a finite upper bound.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t bits, double z);

/// errors/bits with the Wilson 95% interval attached.
MonteCarloResult ber_with_ci(std::uint64_t errors, std::uint64_t bits);

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.575829303548901;

/// Achievable-rate estimate of a bit-metric decoder from LLR samples.
struct GmiEstimate {
  double bits_per_symbol = 0.0;  // in [0, 2] for QPSK
  std::uint64_t sample_count = 0;  // number of bit samples
  double std_error = 0.0;          // of bits_per_symbol
};

/// GMI of the QPSK bit channels from per-bit LLRs and the transmitted bits:
/// 2 - (2/N) * sum log2(1 + exp(-(1-2b)*L)). LLRs are clipped to +/-`clip`
/// before accumulation; non-finite LLRs are an input error.
GmiEstimate gmi_from_llrs(const LlrBlock& llrs, const BitBlock& tx_bits, double clip = 50.0);

/// Options for the ideal-FEC sensitivity search.
struct IdealFecOptions {
  double target_rate = 1.0;          // information bits per symbol, in (0, 2)
  double pump_suppression_db = 12.0;
  std::vector<std::string> penalties;  // ledger labels applied to the SNR
  std::uint64_t seed = 1;
  std::size_t symbols_per_eval = 1u << 20;
  double ppb_low = 0.05;             // search bracket, photons per info bit
  double ppb_high = 50.0;
  double tolerance = 1e-4;           // relative, on PPB
};

/// Total photons per information bit at which the simulated GMI of the
/// penalized channel equals the target rate. Bisects total PPB with common
/// random numbers across evaluations; throws if the target is not bracketed.
double ideal_fec_sensitivity(const ReceiverModel& receiver, const PenaltyLedger& ledger,
                             const IdealFecOptions& options = {});

}  // namespace psalink

#endif
