#ifndef PSALINK_RNG_HPP
#define PSALINK_RNG_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>

namespace psalink {

/// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
///
/// Every output block is a pure function of (seed, stream, counter), so any
/// worker can reproduce any part of any stream without shared state. This is
/// what makes Monte Carlo results independent of the worker count.
struct Philox4x32 {
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block apply(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ULL * ctr[0];
      const std::uint64_t p1 = 0xCD9E8D57ULL * ctr[2];
      ctr = Block{
          static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
          static_cast<std::uint32_t>(p0),
      };
      key[0] += 0x9E3779B9u;  // Weyl key schedule
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

  static Block generate(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const Block ctr{
        static_cast<std::uint32_t>(counter),
        static_cast<std::uint32_t>(counter >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    const Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return apply(ctr, key);
  }
};

/// Packs a (grid point, unit, purpose) triple into a unique stream id.
/// `unit` is a frame or block index; `purpose` separates e.g. data bits from
/// channel noise drawn for the same unit.
inline std::uint64_t make_stream_id(std::uint32_t point, std::uint64_t unit, std::uint8_t purpose) {
  return (static_cast<std::uint64_t>(point) << 48) | ((unit & 0xFFFFFFFFFFULL) << 8) | purpose;
}

/// Sequential view over one Philox stream.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint32_t next_u32() {
    if (pos_ == 4) {
      buf_ = Philox4x32::generate(seed_, stream_, counter_++);
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Two independent standard normal variates (Box-Muller).
  std::pair<double, double> next_gaussian_pair() {
    // u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  /// Fills `n` bits with fair coin flips (values 0/1).
  void fill_bits(std::uint8_t* out, std::size_t n) {
    std::size_t i = 0;
    while (i < n) {
      std::uint32_t w = next_u32();
      for (int b = 0; b < 32 && i < n; ++b, ++i) {
        out[i] = static_cast<std::uint8_t>(w & 1u);
        w >>= 1;
      }
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Philox4x32::Block buf_{};
  int pos_ = 4;
};

}  // namespace psalink

#endif
