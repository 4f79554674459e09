#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace qperc {

// Philox4x32-10 keyed counter block function (Salmon et al., SC'11).
// A (key, counter) pair maps to four statistically independent 32-bit
// words, so random streams can be addressed by coordinates instead of
// carrying sequential generator state between consumers.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static Counter block(Counter c, Key k) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round != 0) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
           static_cast<std::uint32_t>(p0)};
    }
    return c;
  }
};

// Value-semantic random stream keyed by a seed and addressed by a
// (stream, substream) coordinate pair, e.g. (trial, edge). Streams at
// distinct coordinates are independent regardless of how many values
// each one consumes, which makes parallel runs scheduling-invariant.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0,
                        std::uint32_t substream = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        sub_(substream),
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  // Fresh stream at the given coordinates under the same seed.
  RandomStream at(std::uint64_t stream, std::uint32_t substream = 0) const noexcept {
    RandomStream r = *this;
    r.stream_lo_ = static_cast<std::uint32_t>(stream);
    r.stream_hi_ = static_cast<std::uint32_t>(stream >> 32);
    r.sub_ = substream;
    r.draw_ = 0;
    r.have_word_ = false;
    r.have_normal_ = false;
    return r;
  }

  std::uint64_t next_u64() noexcept {
    if (have_word_) {
      have_word_ = false;
      return spare_word_;
    }
    const auto out =
        Philox4x32::block({draw_++, sub_, stream_lo_, stream_hi_}, key_);
    spare_word_ = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    have_word_ = true;
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal deviate (Marsaglia polar; the second of each
  // generated pair is kept for the next call).
  double normal() noexcept {
    if (have_normal_) {
      have_normal_ = false;
      return spare_normal_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    have_normal_ = true;
    return u * f;
  }

  std::uint64_t seed() const noexcept {
    return (static_cast<std::uint64_t>(key_[1]) << 32) | key_[0];
  }

 private:
  Philox4x32::Key key_;
  std::uint32_t sub_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint32_t draw_ = 0;
  std::uint64_t spare_word_ = 0;
  double spare_normal_ = 0.0;
  bool have_word_ = false;
  bool have_normal_ = false;
};

}  // namespace qperc
