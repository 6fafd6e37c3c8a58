#ifndef PSALINK_TYPES_HPP
#define PSALINK_TYPES_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace psalink {

/// Hard bits, one per element, values 0/1.
using BitBlock = std::vector<std::uint8_t>;

/// Complex baseband symbols, unit average energy at the mapper output.
using SymbolBlock = std::vector<std::complex<double>>;

/// Per-bit log-likelihood ratios; positive means bit 0 is more likely.
using LlrBlock = std::vector<double>;

/// Equivalent discrete-time AWGN channel description.
struct ChannelSpec {
  double es_n0 = 1.0;  // linear SNR per symbol
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  bool noiseless = false;  // infinite-SNR limit; es_n0 is ignored when set
};

/// Outcome of an FEC decode attempt.
/// `iterations_used` counts BP iterations for the LDPC decoder and corrected
/// bit errors for the BCH decoder. `converged` is only set when the decoded
/// word passes the code's own checks exactly.
struct DecodeResult {
  BitBlock bits;
  int iterations_used = 0;
  bool converged = false;
};

}  // namespace psalink

#endif
