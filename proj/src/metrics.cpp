#include "psalink/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "psalink/errors.hpp"
#include "psalink/modem.hpp"
#include "psalink/rng.hpp"

namespace psalink {

void StopRule::validate() const {
  if (max_bits == 0) {
    throw ConfigError("StopRule: max_bits must be > 0 (rule can never be satisfied)");
  }
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t bits,
                                          double z) {
  if (bits == 0) throw std::invalid_argument("wilson_interval: bits must be > 0");
  if (errors > bits) throw std::invalid_argument("wilson_interval: errors > bits");
  const double n = static_cast<double>(bits);
  const double p = static_cast<double>(errors) / n;
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = (p + z2n / 2.0) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / denom;
  double lo = center - half;
  double hi = center + half;
  if (lo < 0.0) lo = 0.0;
  if (hi > 1.0) hi = 1.0;
  return {lo, hi};
}

MonteCarloResult ber_with_ci(std::uint64_t errors, std::uint64_t bits) {
  const auto [lo, hi] = wilson_interval(errors, bits, kZ95);
  MonteCarloResult r;
  r.errors = errors;
  r.bits = bits;
  r.ber = static_cast<double>(errors) / static_cast<double>(bits);
  r.ci95_low = lo;
  r.ci95_high = hi;
  return r;
}

GmiEstimate gmi_from_llrs(const LlrBlock& llrs, const BitBlock& tx_bits, double clip) {
  if (llrs.size() != tx_bits.size()) {
    throw std::invalid_argument("gmi_from_llrs: LLR/bit length mismatch");
  }
  if (llrs.empty()) throw std::invalid_argument("gmi_from_llrs: empty input");
  if (!(clip > 0.0)) throw std::invalid_argument("gmi_from_llrs: clip must be > 0");

  constexpr double kLog2 = 0.69314718055994530942;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < llrs.size(); ++i) {
    double llr = llrs[i];
    if (!std::isfinite(llr)) {
      throw std::invalid_argument("gmi_from_llrs: non-finite LLR at index " +
                                  std::to_string(i));
    }
    if (llr > clip) llr = clip;
    if (llr < -clip) llr = -clip;
    const double t = (tx_bits[i] ? -1.0 : 1.0) * llr;
    // log2(1 + exp(-t)) evaluated stably for large |t|.
    const double x = (t >= 0.0 ? std::log1p(std::exp(-t))
                               : -t + std::log1p(std::exp(t))) /
                     kLog2;
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(llrs.size());
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);

  GmiEstimate est;
  est.bits_per_symbol = 2.0 - 2.0 * mean;
  est.sample_count = llrs.size();
  est.std_error = 2.0 * std::sqrt(var / n);
  return est;
}

namespace {

/// GMI of the penalized QPSK channel at a given total photons/symbol, using
/// one fixed noise realization (common random numbers keep the bisection
/// smooth and monotone).
double gmi_at_photons(double total_photons, const ReceiverModel& receiver,
                      const PenaltyLedger& ledger, const IdealFecOptions& opt) {
  const PowerBudget budget =
      receiver_budget(receiver.kind, total_photons, opt.pump_suppression_db);
  double snr = symbol_snr(budget, receiver);
  snr = apply_penalties(snr, ledger, opt.penalties);
  if (!(snr > 0.0)) return 0.0;

  BitBlock bits(2 * opt.symbols_per_eval);
  RandomStream data_rng(opt.seed, make_stream_id(0, 0, 1));
  data_rng.fill_bits(bits.data(), bits.size());
  const SymbolBlock tx = qpsk_map(bits);
  ChannelSpec spec;
  spec.es_n0 = snr;
  spec.seed = opt.seed;
  spec.stream_id = make_stream_id(0, 0, 2);
  const SymbolBlock rx = awgn(tx, spec);
  const LlrBlock llrs = qpsk_llr(rx, snr);
  return gmi_from_llrs(llrs, bits).bits_per_symbol;
}

}  // namespace

double ideal_fec_sensitivity(const ReceiverModel& receiver, const PenaltyLedger& ledger,
                             const IdealFecOptions& opt) {
  if (!(opt.target_rate > 0.0 && opt.target_rate < 2.0)) {
    throw std::invalid_argument("ideal_fec_sensitivity: target rate must be in (0, 2)");
  }
  if (!(opt.ppb_low > 0.0 && opt.ppb_high > opt.ppb_low)) {
    throw std::invalid_argument("ideal_fec_sensitivity: invalid search bracket");
  }

  const auto rate_at = [&](double ppb) {
    return gmi_at_photons(ppb * opt.target_rate, receiver, ledger, opt);
  };

  double lo = opt.ppb_low;
  double hi = opt.ppb_high;
  const double rate_lo = rate_at(lo);
  const double rate_hi = rate_at(hi);
  if (rate_lo > opt.target_rate || rate_hi < opt.target_rate) {
    std::ostringstream msg;
    msg << "ideal_fec_sensitivity: target rate " << opt.target_rate
        << " not bracketed: GMI(" << lo << " PPB) = " << rate_lo << ", GMI(" << hi
        << " PPB) = " << rate_hi;
    throw std::runtime_error(msg.str());
  }

  while ((hi - lo) / hi > opt.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (rate_at(mid) < opt.target_rate) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace psalink
