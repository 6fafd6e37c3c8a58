#ifndef PSALINK_BCH_HPP
#define PSALINK_BCH_HPP

#include <cstdint>
#include <vector>

#include "psalink/ldpc.hpp"
#include "psalink/types.hpp"

namespace psalink {

/// GF(2^m) with log/antilog tables over a primitive polynomial.
class Gf2m {
 public:
  Gf2m(int m, std::uint32_t primitive_poly);  // throws if the polynomial is not primitive

  int degree() const { return m_; }
  std::uint32_t order() const { return order_; }  // 2^m - 1

  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint16_t inv(std::uint16_t a) const;
  std::uint16_t alpha_pow(std::int64_t e) const;  // alpha^e, e may be negative
  std::int32_t log(std::uint16_t a) const;

 private:
  int m_;
  std::uint32_t order_;
  std::vector<std::uint16_t> exp_;  // doubled, so mul needs no modulo
  std::vector<std::int32_t> log_;
};

/// DVB-S2 outer BCH code, t = 12. The generator polynomial is built from the
/// standard's field polynomial as the product of the minimal polynomials of
/// alpha^1 .. alpha^(2t-1) (odd powers), then the code is shortened to
/// (n, k) = (32400, 32208) for normal frames or (7200, 7032) for short ones.
class BchCode {
 public:
  static const BchCode& dvbs2(LdpcFrame frame);

  int n() const { return n_; }
  int k() const { return k_; }
  int t() const { return t_; }
  const Gf2m& field() const { return field_; }

  /// Generator coefficients, constant term first; degree n - k.
  const std::vector<std::uint8_t>& generator() const { return generator_; }

 private:
  BchCode(int n, int k, int field_degree, std::uint32_t field_poly);

  int n_, k_, t_ = 12;
  Gf2m field_;
  std::vector<std::uint8_t> generator_;
  std::vector<std::uint64_t> generator_words_;  // bit-packed, for the encoder
  friend BitBlock bch_encode(const BitBlock&, const BchCode&);
};

/// Systematic encode: info (k bits) followed by n-k parity bits; the result,
/// read MSB-first as a polynomial, is divisible by the generator.
BitBlock bch_encode(const BitBlock& info, const BchCode& code);

/// Corrects up to t bit errors via syndromes, Berlekamp-Massey, and Chien
/// search. `converged` is set only when the corrected word passes a full
/// re-encode (syndrome) check; `iterations_used` reports corrected bits.
DecodeResult bch_decode(const BitBlock& word, const BchCode& code);

}  // namespace psalink

#endif
