#include "psalink/fec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psalink/errors.hpp"
#include "psalink/modem.hpp"
#include "psalink/rng.hpp"
#include "parallel.hpp"

namespace psalink {

FecChain::FecChain(const CodeSpec& spec)
    : spec_(spec),
      ldpc_(&LdpcCode::standard(spec.frame)),
      bch_(spec.ldpc_only ? nullptr : &BchCode::dvbs2(spec.frame)) {
  if (spec.max_iter < 1) {
    throw ConfigError("FecChain: max_iter must be >= 1");
  }
  if (bch_ && bch_->n() != ldpc_->info_length()) {
    throw ConfigError("FecChain: BCH length does not match the LDPC info length");
  }
}

int FecChain::info_length() const {
  return bch_ ? bch_->k() : ldpc_->info_length();
}

double FecChain::net_bits_per_symbol() const {
  return 2.0 * static_cast<double>(info_length()) /
         static_cast<double>(ldpc_->frame_length());
}

BitBlock FecChain::encode(const BitBlock& info) const {
  if (info.size() != static_cast<std::size_t>(info_length())) {
    throw std::invalid_argument("FecChain: info length must be " +
                                std::to_string(info_length()));
  }
  if (!bch_) return ldpc_encode(info, *ldpc_);
  return ldpc_encode(bch_encode(info, *bch_), *ldpc_);
}

DecodeResult FecChain::decode(const LlrBlock& llrs) const {
  DecodeResult inner = ldpc_decode(llrs, *ldpc_, spec_.max_iter, spec_.rule);
  if (!bch_) {
    inner.bits.resize(ldpc_->info_length());
    return inner;
  }
  BitBlock middle(inner.bits.begin(), inner.bits.begin() + ldpc_->info_length());
  DecodeResult outer = bch_decode(middle, *bch_);
  DecodeResult result;
  result.bits.assign(outer.bits.begin(), outer.bits.begin() + bch_->k());
  result.iterations_used = inner.iterations_used;
  result.converged = outer.converged;
  return result;
}

WaterfallPoint run_coded_frame(const FecChain& chain, double es_n0, std::uint64_t seed,
                               std::uint32_t point, std::uint64_t frame_index) {
  const int k = chain.info_length();
  BitBlock info(k);
  RandomStream data_rng(seed, make_stream_id(point, frame_index, 1));
  data_rng.fill_bits(info.data(), info.size());

  const BitBlock codeword = chain.encode(info);
  const SymbolBlock tx = qpsk_map(codeword);

  ChannelSpec spec;
  spec.es_n0 = es_n0;
  spec.seed = seed;
  spec.stream_id = make_stream_id(point, frame_index, 2);
  const SymbolBlock rx = awgn(tx, spec);

  WaterfallPoint counts;
  counts.es_n0 = es_n0;
  counts.frames = 1;

  const BitBlock hard = qpsk_demap_hard(rx);
  counts.prefec_bits = codeword.size();
  for (std::size_t i = 0; i < codeword.size(); ++i) {
    counts.prefec_errors += hard[i] != codeword[i];
  }

  const LlrBlock llrs = qpsk_llr(rx, es_n0);
  const DecodeResult decoded = chain.decode(llrs);
  counts.postfec_bits = info.size();
  for (std::size_t i = 0; i < info.size(); ++i) {
    counts.postfec_errors += decoded.bits[i] != info[i];
  }
  counts.frame_errors = counts.postfec_errors > 0 ? 1 : 0;
  counts.avg_iterations = decoded.iterations_used;
  return counts;
}

namespace {

constexpr std::size_t kFramesPerBatch = 8;

WaterfallPoint merge(std::span<const WaterfallPoint> parts, double es_n0) {
  WaterfallPoint total;
  total.es_n0 = es_n0;
  double iter_sum = 0.0;
  for (const auto& p : parts) {
    total.frames += p.frames;
    total.frame_errors += p.frame_errors;
    total.prefec_bits += p.prefec_bits;
    total.prefec_errors += p.prefec_errors;
    total.postfec_bits += p.postfec_bits;
    total.postfec_errors += p.postfec_errors;
    iter_sum += p.avg_iterations * p.frames;
  }
  total.avg_iterations = total.frames ? iter_sum / total.frames : 0.0;
  return total;
}

}  // namespace

std::vector<WaterfallPoint> waterfall(std::span<const double> es_n0_grid,
                                      const CodeSpec& code, const StopRule& stop,
                                      std::uint64_t seed, unsigned workers) {
  if (es_n0_grid.empty()) throw ConfigError("waterfall: empty Es/N0 grid");
  stop.validate();
  for (double es : es_n0_grid) {
    if (!(es > 0.0)) throw ConfigError("waterfall: Es/N0 values must be > 0");
  }

  const FecChain chain(code);
  const std::uint64_t bits_per_frame = chain.info_length();
  const std::size_t max_frames = static_cast<std::size_t>(
      (stop.max_bits + bits_per_frame - 1) / bits_per_frame);

  std::vector<WaterfallPoint> out;
  out.reserve(es_n0_grid.size());
  for (std::size_t p = 0; p < es_n0_grid.size(); ++p) {
    const double es = es_n0_grid[p];
    auto frames = detail::run_batched<WaterfallPoint>(
        kFramesPerBatch, max_frames, workers,
        [&](std::size_t f) {
          return run_coded_frame(chain, es, seed, static_cast<std::uint32_t>(p), f);
        },
        [&](const std::vector<WaterfallPoint>& done) {
          std::uint64_t frame_errors = 0, bits = 0;
          for (const auto& d : done) {
            frame_errors += d.frame_errors;
            bits += d.postfec_bits;
          }
          return stop.satisfied(frame_errors, bits);
        });
    out.push_back(merge(frames, es));
  }
  return out;
}

}  // namespace psalink
