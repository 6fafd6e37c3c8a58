#ifndef PSALINK_FEC_HPP
#define PSALINK_FEC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "psalink/bch.hpp"
#include "psalink/ldpc.hpp"
#include "psalink/metrics.hpp"
#include "psalink/types.hpp"

namespace psalink {

/// Concatenated-code configuration: DVB-S2 rate-1/2 LDPC inner code with the
/// outer BCH enabled by default; ldpc_only drops the BCH for exact rate 1/2.
struct CodeSpec {
  LdpcFrame frame = LdpcFrame::Normal64800;
  bool ldpc_only = false;
  int max_iter = 50;
  CheckRule rule = CheckRule::SumProduct;
};

/// Encode/decode through the concatenated chain.
class FecChain {
 public:
  explicit FecChain(const CodeSpec& spec);

  const CodeSpec& spec() const { return spec_; }
  const LdpcCode& ldpc() const { return *ldpc_; }
  int frame_length() const { return ldpc_->frame_length(); }

  /// Information bits in and out of the chain per frame.
  int info_length() const;

  /// Net information bits per QPSK symbol: 2 k / n exactly.
  double net_bits_per_symbol() const;

  BitBlock encode(const BitBlock& info) const;

  /// LDPC soft decode, then BCH hard cleanup when enabled. Returns the
  /// recovered information bits; `converged` reflects the outer stage.
  DecodeResult decode(const LlrBlock& llrs) const;

 private:
  CodeSpec spec_;
  const LdpcCode* ldpc_;
  const BchCode* bch_;  // null in ldpc_only mode
};

/// One Es/N0 point of a coded Monte Carlo run.
struct WaterfallPoint {
  double es_n0 = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t prefec_bits = 0;
  std::uint64_t prefec_errors = 0;
  std::uint64_t postfec_bits = 0;
  std::uint64_t postfec_errors = 0;
  double avg_iterations = 0.0;

  double prefec_ber() const {
    return prefec_bits ? double(prefec_errors) / double(prefec_bits) : 0.0;
  }
  double postfec_ber() const {
    return postfec_bits ? double(postfec_errors) / double(postfec_bits) : 0.0;
  }
  double frame_error_rate() const {
    return frames ? double(frame_errors) / double(frames) : 0.0;
  }
};

/// Monte Carlo over the full modem+FEC chain, one point per Es/N0 value.
/// `stop.min_errors` counts post-FEC frame errors; `stop.max_bits` caps the
/// decoded information bits per point. Deterministic in (seed, grid index)
/// regardless of worker count.
std::vector<WaterfallPoint> waterfall(std::span<const double> es_n0_grid,
                                      const CodeSpec& code, const StopRule& stop,
                                      std::uint64_t seed, unsigned workers = 1);

/// Single-frame version used by the sweep drivers: frame `frame_index` of
/// grid point `point` at the given channel SNR.
WaterfallPoint run_coded_frame(const FecChain& chain, double es_n0, std::uint64_t seed,
                               std::uint32_t point, std::uint64_t frame_index);

}  // namespace psalink

#endif
