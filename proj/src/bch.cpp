#include "psalink/bch.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>

namespace psalink {

Gf2m::Gf2m(int m, std::uint32_t primitive_poly) : m_(m) {
  if (m < 2 || m > 16) throw std::invalid_argument("Gf2m: degree out of range");
  order_ = (1u << m) - 1u;
  exp_.assign(2 * order_, 0);
  log_.assign(order_ + 1, -1);

  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < order_; ++i) {
    if (log_[x] != -1) {
      throw std::invalid_argument("Gf2m: polynomial is not primitive");
    }
    exp_[i] = static_cast<std::uint16_t>(x);
    exp_[i + order_] = exp_[i];
    log_[x] = static_cast<std::int32_t>(i);
    x <<= 1;
    if (x & (1u << m)) x ^= primitive_poly;
  }
  if (x != 1) throw std::invalid_argument("Gf2m: polynomial is not primitive");
}

std::uint16_t Gf2m::inv(std::uint16_t a) const {
  if (a == 0) throw std::domain_error("Gf2m: inverse of zero");
  return exp_[order_ - log_[a]];
}

std::uint16_t Gf2m::alpha_pow(std::int64_t e) const {
  std::int64_t r = e % static_cast<std::int64_t>(order_);
  if (r < 0) r += order_;
  return exp_[r];
}

std::int32_t Gf2m::log(std::uint16_t a) const {
  if (a == 0) throw std::domain_error("Gf2m: log of zero");
  return log_[a];
}

namespace {

/// Minimal polynomial of alpha^i over GF(2): product of (x - alpha^c) over
/// the cyclotomic coset of i. Coefficients land in {0, 1} by construction.
std::vector<std::uint8_t> minimal_polynomial(const Gf2m& field, std::uint32_t i) {
  std::set<std::uint32_t> coset;
  std::uint32_t c = i % field.order();
  while (!coset.count(c)) {
    coset.insert(c);
    c = static_cast<std::uint32_t>((2ull * c) % field.order());
  }

  std::vector<std::uint16_t> poly{1};  // over GF(2^m), constant term first
  for (std::uint32_t exp : coset) {
    const std::uint16_t root = field.alpha_pow(exp);
    std::vector<std::uint16_t> next(poly.size() + 1, 0);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] ^= poly[d];                 // x * poly
      next[d] ^= field.mul(poly[d], root);    // root * poly
    }
    poly = std::move(next);
  }

  std::vector<std::uint8_t> bits(poly.size());
  for (std::size_t d = 0; d < poly.size(); ++d) {
    if (poly[d] > 1) {
      throw std::logic_error("minimal_polynomial: coefficient outside GF(2)");
    }
    bits[d] = static_cast<std::uint8_t>(poly[d]);
  }
  return bits;
}

std::vector<std::uint8_t> poly_mul_gf2(const std::vector<std::uint8_t>& a,
                                       const std::vector<std::uint8_t>& b) {
  std::vector<std::uint8_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] ^= b[j];
    }
  }
  return out;
}

}  // namespace

BchCode::BchCode(int n, int k, int field_degree, std::uint32_t field_poly)
    : n_(n), k_(k), field_(field_degree, field_poly) {
  // Distinct minimal polynomials of alpha^1..alpha^(2t-1); even powers share
  // cosets with odd ones, so odd representatives cover all 2t roots.
  std::set<std::uint32_t> seen_cosets;
  generator_ = {1};
  for (int i = 1; i <= 2 * t_ - 1; i += 2) {
    std::uint32_t rep = i;
    std::uint32_t c = i;
    do {
      rep = std::min(rep, c);
      c = static_cast<std::uint32_t>((2ull * c) % field_.order());
    } while (c != static_cast<std::uint32_t>(i));
    if (!seen_cosets.insert(rep).second) continue;
    generator_ = poly_mul_gf2(generator_, minimal_polynomial(field_, i));
  }

  const int parity = n_ - k_;
  if (static_cast<int>(generator_.size()) != parity + 1 || generator_[parity] != 1 ||
      generator_[0] != 1) {
    throw std::logic_error("BchCode: generator degree does not match n - k");
  }

  generator_words_.assign((parity + 63) / 64, 0);
  for (int d = 0; d < parity; ++d) {  // top coefficient is implicit
    if (generator_[d]) generator_words_[d / 64] |= 1ull << (d % 64);
  }
}

const BchCode& BchCode::dvbs2(LdpcFrame frame) {
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  // Field polynomials from the standard: x^16+x^5+x^3+x^2+1 for normal
  // frames, x^14+x^5+x^3+x+1 for short ones.
  if (frame == LdpcFrame::Normal64800) {
    static const BchCode normal(32400, 32208, 16, 0x1002Du);
    return normal;
  }
  static const BchCode short_frame(7200, 7032, 14, 0x402Bu);
  return short_frame;
}

BitBlock bch_encode(const BitBlock& info, const BchCode& code) {
  if (info.size() != static_cast<std::size_t>(code.k())) {
    throw std::invalid_argument("bch_encode: info length must be " +
                                std::to_string(code.k()));
  }
  const int parity = code.n() - code.k();
  const auto& gen = code.generator_words_;
  const std::size_t words = gen.size();
  const int top_word = (parity - 1) / 64;
  const int top_bit = (parity - 1) % 64;

  // LFSR division of info(x) * x^parity by g(x); bits enter MSB-first.
  std::vector<std::uint64_t> reg(words, 0);
  for (const std::uint8_t bit : info) {
    const std::uint64_t feedback = ((reg[top_word] >> top_bit) & 1ull) ^ bit;
    for (int w = static_cast<int>(words) - 1; w >= 0; --w) {
      reg[w] <<= 1;
      if (w > 0) reg[w] |= reg[w - 1] >> 63;
    }
    if (feedback) {
      for (std::size_t w = 0; w < words; ++w) reg[w] ^= gen[w];
    }
  }

  BitBlock codeword(code.n());
  std::copy(info.begin(), info.end(), codeword.begin());
  for (int j = 0; j < parity; ++j) {
    const int d = parity - 1 - j;  // remainder coefficient, MSB first
    codeword[code.k() + j] = static_cast<std::uint8_t>((reg[d / 64] >> (d % 64)) & 1ull);
  }
  return codeword;
}

namespace {

/// Syndromes S_1..S_2t of the received word read MSB-first as a polynomial.
std::vector<std::uint16_t> syndromes(const BitBlock& word, const BchCode& code) {
  const Gf2m& gf = code.field();
  std::vector<std::uint16_t> s(2 * code.t());
  for (int j = 1; j <= 2 * code.t(); ++j) {
    const std::uint16_t aj = gf.alpha_pow(j);
    std::uint16_t acc = 0;
    for (const std::uint8_t bit : word) {
      acc = gf.mul(acc, aj);
      acc ^= bit;
    }
    s[j - 1] = acc;
  }
  return s;
}

/// Berlekamp-Massey over GF(2^m); returns the error locator polynomial
/// (constant term first).
std::vector<std::uint16_t> berlekamp_massey(const std::vector<std::uint16_t>& s,
                                            const Gf2m& gf) {
  std::vector<std::uint16_t> sigma{1};
  std::vector<std::uint16_t> prev{1};
  int l = 0;
  int shift = 1;
  std::uint16_t prev_discrepancy = 1;

  for (std::size_t r = 0; r < s.size(); ++r) {
    std::uint16_t d = 0;
    for (int i = 0; i <= l && i < static_cast<int>(sigma.size()); ++i) {
      d ^= gf.mul(sigma[i], s[r - i]);
    }
    if (d == 0) {
      ++shift;
      continue;
    }
    const std::vector<std::uint16_t> saved = sigma;
    const std::uint16_t scale = gf.mul(d, gf.inv(prev_discrepancy));
    if (sigma.size() < prev.size() + shift) sigma.resize(prev.size() + shift, 0);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      sigma[i + shift] ^= gf.mul(scale, prev[i]);
    }
    if (2 * l <= static_cast<int>(r)) {
      l = static_cast<int>(r) + 1 - l;
      prev = saved;
      prev_discrepancy = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  sigma.resize(l + 1);
  return sigma;
}

}  // namespace

DecodeResult bch_decode(const BitBlock& word, const BchCode& code) {
  if (word.size() != static_cast<std::size_t>(code.n())) {
    throw std::invalid_argument("bch_decode: word length must be " +
                                std::to_string(code.n()));
  }
  const Gf2m& gf = code.field();

  DecodeResult result;
  result.bits = word;

  const auto s = syndromes(word, code);
  if (std::all_of(s.begin(), s.end(), [](std::uint16_t v) { return v == 0; })) {
    result.converged = true;
    return result;
  }

  const auto sigma = berlekamp_massey(s, gf);
  const int nu = static_cast<int>(sigma.size()) - 1;
  if (nu < 1 || nu > code.t()) {
    result.converged = false;
    return result;
  }

  // Chien search over the shortened positions. Bit i carries degree
  // n-1-i, and an error there makes alpha^-(n-1-i) a root of sigma.
  std::vector<int> error_positions;
  std::vector<std::uint16_t> term(nu + 1);
  std::vector<std::uint16_t> step(nu + 1);
  for (int j = 0; j <= nu; ++j) {
    term[j] = gf.mul(sigma[j], gf.alpha_pow(-static_cast<std::int64_t>(j) *
                                            (code.n() - 1)));
    step[j] = gf.alpha_pow(j);
  }
  for (int i = 0; i < code.n(); ++i) {
    std::uint16_t val = 0;
    for (int j = 0; j <= nu; ++j) val ^= term[j];
    if (val == 0) error_positions.push_back(i);
    if (i + 1 < code.n()) {
      for (int j = 1; j <= nu; ++j) term[j] = gf.mul(term[j], step[j]);
    }
  }

  if (static_cast<int>(error_positions.size()) != nu) {
    result.converged = false;  // locator roots outside the shortened code
    return result;
  }

  for (int pos : error_positions) result.bits[pos] ^= 1u;
  result.iterations_used = nu;

  // Re-encode check: a wrong answer never sails through silently.
  const auto s2 = syndromes(result.bits, code);
  result.converged =
      std::all_of(s2.begin(), s2.end(), [](std::uint16_t v) { return v == 0; });
  if (!result.converged) {
    result.bits = word;  // leave the input untouched on miscorrection
    result.iterations_used = 0;
  }
  return result;
}

}  // namespace psalink
