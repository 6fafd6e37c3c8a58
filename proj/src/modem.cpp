#include "psalink/modem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "psalink/errors.hpp"
#include "psalink/rng.hpp"
#include "parallel.hpp"

namespace psalink {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

SymbolBlock qpsk_map(const BitBlock& bits) {
  if (bits.size() % 2 != 0) {
    throw std::invalid_argument("qpsk_map: bit count must be even");
  }
  SymbolBlock symbols(bits.size() / 2);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const double re = bits[2 * i] ? -kInvSqrt2 : kInvSqrt2;
    const double im = bits[2 * i + 1] ? -kInvSqrt2 : kInvSqrt2;
    symbols[i] = {re, im};
  }
  return symbols;
}

SymbolBlock awgn(const SymbolBlock& symbols, const ChannelSpec& spec) {
  if (spec.noiseless) return symbols;
  if (!(spec.es_n0 > 0.0)) {
    throw std::invalid_argument("awgn: es_n0 must be > 0");
  }
  const double sigma = std::sqrt(0.5 / spec.es_n0);  // per quadrature
  SymbolBlock out(symbols.size());
  RandomStream rng(spec.seed, spec.stream_id);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto [z0, z1] = rng.next_gaussian_pair();
    out[i] = symbols[i] + std::complex<double>(sigma * z0, sigma * z1);
  }
  return out;
}

BitBlock qpsk_demap_hard(const SymbolBlock& symbols) {
  BitBlock bits(symbols.size() * 2);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    bits[2 * i] = symbols[i].real() < 0.0 ? 1 : 0;
    bits[2 * i + 1] = symbols[i].imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

LlrBlock qpsk_llr(const SymbolBlock& symbols, double es_n0) {
  if (!(es_n0 > 0.0)) {
    throw std::invalid_argument("qpsk_llr: es_n0 must be > 0");
  }
  const double scale = 2.0 * std::sqrt(2.0) * es_n0;
  LlrBlock llrs(symbols.size() * 2);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    llrs[2 * i] = scale * symbols[i].real();
    llrs[2 * i + 1] = scale * symbols[i].imag();
  }
  return llrs;
}

double q_function(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double theoretical_ber_qpsk(double es_n0) {
  if (!(es_n0 >= 0.0)) {
    throw std::invalid_argument("theoretical_ber_qpsk: es_n0 must be >= 0");
  }
  if (std::isinf(es_n0)) return 0.0;
  return q_function(std::sqrt(es_n0));
}

namespace {

struct BlockCounts {
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
};

constexpr std::size_t kSymbolsPerBlock = 1u << 14;
constexpr std::size_t kBlocksPerBatch = 8;

/// One block of random QPSK symbols through the AWGN channel, hard-demapped.
/// Everything derives from (seed, point, block), so any worker reproduces it.
BlockCounts uncoded_block(double es_n0, bool noiseless, std::uint64_t seed,
                          std::uint32_t point, std::size_t block) {
  BitBlock tx_bits(2 * kSymbolsPerBlock);
  RandomStream data_rng(seed, make_stream_id(point, block, 1));
  data_rng.fill_bits(tx_bits.data(), tx_bits.size());

  const SymbolBlock tx = qpsk_map(tx_bits);
  ChannelSpec spec;
  spec.es_n0 = es_n0;
  spec.noiseless = noiseless;
  spec.seed = seed;
  spec.stream_id = make_stream_id(point, block, 2);
  const SymbolBlock rx = awgn(tx, spec);
  const BitBlock rx_bits = qpsk_demap_hard(rx);

  BlockCounts counts;
  counts.bits = tx_bits.size();
  for (std::size_t i = 0; i < tx_bits.size(); ++i) {
    counts.errors += tx_bits[i] != rx_bits[i];
  }
  return counts;
}

}  // namespace

MonteCarloResult simulate_uncoded_ber(double es_n0, const StopRule& stop,
                                      std::uint64_t seed, std::uint32_t stream_point,
                                      unsigned workers) {
  stop.validate();
  const bool noiseless = std::isinf(es_n0);
  if (!noiseless && !(es_n0 > 0.0)) {
    throw std::invalid_argument("simulate_uncoded_ber: es_n0 must be > 0");
  }
  const std::size_t max_blocks =
      (stop.max_bits + 2 * kSymbolsPerBlock - 1) / (2 * kSymbolsPerBlock);
  auto results = detail::run_batched<BlockCounts>(
      kBlocksPerBatch, max_blocks, workers,
      [&](std::size_t block) {
        return uncoded_block(es_n0, noiseless, seed, stream_point, block);
      },
      [&](const std::vector<BlockCounts>& done) {
        std::uint64_t errors = 0, bits = 0;
        for (const auto& c : done) {
          errors += c.errors;
          bits += c.bits;
        }
        return stop.satisfied(errors, bits);
      });
  std::uint64_t errors = 0, bits = 0;
  for (const auto& c : results) {
    errors += c.errors;
    bits += c.bits;
  }
  return ber_with_ci(errors, bits);
}

std::vector<MonteCarloResult> run_uncoded_ber(std::span<const double> total_photons_grid,
                                              const ReceiverModel& receiver,
                                              double pump_suppression_db,
                                              const StopRule& stop, std::uint64_t seed,
                                              unsigned workers) {
  if (total_photons_grid.empty()) {
    throw ConfigError("run_uncoded_ber: empty sweep grid");
  }
  stop.validate();
  std::vector<MonteCarloResult> out;
  out.reserve(total_photons_grid.size());
  for (std::size_t p = 0; p < total_photons_grid.size(); ++p) {
    const PowerBudget budget =
        receiver_budget(receiver.kind, total_photons_grid[p], pump_suppression_db);
    const double es_n0 = symbol_snr(budget, receiver);
    out.push_back(simulate_uncoded_ber(es_n0, stop, seed,
                                       static_cast<std::uint32_t>(p), workers));
  }
  return out;
}

}  // namespace psalink
