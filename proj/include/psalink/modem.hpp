#ifndef PSALINK_MODEM_HPP
#define PSALINK_MODEM_HPP

#include <cstdint>
#include <span>

#include "psalink/linkmodel.hpp"
#include "psalink/metrics.hpp"
#include "psalink/types.hpp"

namespace psalink {

/// Gray-mapped QPSK: bit pair (b_I, b_Q) -> ((1-2b_I) + j(1-2b_Q))/sqrt(2).
/// The first bit of each pair drives the in-phase rail. Odd-length input is
/// an input-shape error.
SymbolBlock qpsk_map(const BitBlock& bits);

/// Adds circularly symmetric complex Gaussian noise with total variance
/// 1/es_n0 per symbol (1/(2 es_n0) per quadrature). Deterministic in
/// (seed, stream_id); `noiseless` returns the input unchanged.
SymbolBlock awgn(const SymbolBlock& symbols, const ChannelSpec& spec);

/// Per-quadrature sign decision; exact zero resolves to bit 0.
BitBlock qpsk_demap_hard(const SymbolBlock& symbols);

/// Exact per-bit LLRs for Gray QPSK: LLR = 2*sqrt(2)*es_n0*y per quadrature
/// (positive means bit 0). Equals the full log-sum demapper because the
/// constellation separates by quadrature.
LlrBlock qpsk_llr(const SymbolBlock& symbols, double es_n0);

/// Uncoded QPSK bit error probability Q(sqrt(es_n0)).
double theoretical_ber_qpsk(double es_n0);

/// Gaussian tail probability Q(x).
double q_function(double x);

/// Monte Carlo uncoded BER at one channel SNR. Symbols are simulated in
/// fixed-size blocks; the stop rule is checked on cumulative counts at fixed
/// batch boundaries so results do not depend on `workers`. An infinite or
/// NaN-free `es_n0` with `noiseless` semantics is reached via
/// `std::numeric_limits<double>::infinity()`.
MonteCarloResult simulate_uncoded_ber(double es_n0, const StopRule& stop,
                                      std::uint64_t seed, std::uint32_t stream_point,
                                      unsigned workers = 1);

/// Fig.-2-style pre-FEC sweep: one Monte Carlo BER per total-photon budget.
/// PSA budgets are split signal/idler/pump at the given suppression; EDFA and
/// single-quadrature budgets are signal-only.
std::vector<MonteCarloResult> run_uncoded_ber(std::span<const double> total_photons_grid,
                                              const ReceiverModel& receiver,
                                              double pump_suppression_db,
                                              const StopRule& stop, std::uint64_t seed,
                                              unsigned workers = 1);

}  // namespace psalink

#endif
