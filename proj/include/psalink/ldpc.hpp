#ifndef PSALINK_LDPC_HPP
#define PSALINK_LDPC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "psalink/types.hpp"

namespace psalink {

enum class LdpcFrame { Normal64800, Short16200 };

enum class CheckRule {
  SumProduct,        // exact tanh-rule check update
  NormalizedMinSum,  // min-sum scaled by 0.75, the fast option
};

/// DVB-S2 rate-1/2 LDPC code, built from the standard's accumulator address
/// table (ETSI EN 302 307-1). The table ships as a checksummed text file;
/// both the encoder and the decoder graph derive from it.
class LdpcCode {
 public:
  static LdpcCode load(const std::string& path);

  /// The bundled standard code for a frame size (loaded once, then shared).
  static const LdpcCode& standard(LdpcFrame frame);

  int frame_length() const { return frame_length_; }
  int info_length() const { return info_length_; }
  int parity_length() const { return frame_length_ - info_length_; }
  int q() const { return q_; }
  std::uint32_t table_crc32() const { return crc32_; }

  /// Accumulator addresses for the first bit of each 360-column group.
  const std::vector<std::vector<std::int32_t>>& group_addresses() const {
    return groups_;
  }

  // Check-major adjacency of the full parity-check matrix (info + staircase
  // parity columns), used by the decoder and the syndrome check.
  const std::vector<std::int32_t>& check_offsets() const { return check_offsets_; }
  const std::vector<std::int32_t>& edge_variables() const { return edge_vars_; }
  int max_check_degree() const { return max_check_degree_; }

  /// H*word over GF(2); true when every check is satisfied.
  bool syndrome_is_zero(const BitBlock& word) const;

 private:
  LdpcCode() = default;
  void build_graph();

  int frame_length_ = 0;
  int info_length_ = 0;
  int q_ = 0;
  std::uint32_t crc32_ = 0;
  std::vector<std::vector<std::int32_t>> groups_;
  std::vector<std::int32_t> check_offsets_;
  std::vector<std::int32_t> edge_vars_;
  int max_check_degree_ = 0;
};

/// Systematic encode: info followed by accumulator parity, zero syndrome.
BitBlock ldpc_encode(const BitBlock& info, const LdpcCode& code);

/// Flooding belief-propagation decode. Stops early on a zero syndrome;
/// otherwise returns best-effort hard decisions with converged = false.
/// A posterior of exactly zero carries no sign information and never
/// certifies convergence.
DecodeResult ldpc_decode(const LlrBlock& llrs, const LdpcCode& code, int max_iter = 50,
                         CheckRule rule = CheckRule::SumProduct);

/// Default locations of the bundled address tables. Honors the
/// PSALINK_DATA_DIR environment variable, falling back to the build-time
/// data directory.
std::string default_table_path(LdpcFrame frame);

}  // namespace psalink

#endif
