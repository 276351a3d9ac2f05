// philox.hpp
// Counter-based random streams (Philox4x32-10, Salmon et al. constants).
//
// Stream (seed, stream_index) is an independent generator whose draws
// depend only on (seed, stream_index, draw position). Monte Carlo trial i
// reads stream (seed, i), so tallies are identical for any worker count.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace ifm {

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = 0xD2511F53ull * ctr[0];
  const std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
  ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
         static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
         static_cast<std::uint32_t>(p0)};
}

}  // namespace detail

// One Philox4x32-10 block: 128-bit counter + 64-bit key -> 128-bit output.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) {
  detail::philox_round(counter, key);
  for (int round = 1; round < 10; ++round) {
    key[0] += 0x9E3779B9u;  // golden-ratio Weyl increments
    key[1] += 0xBB67AE85u;
    detail::philox_round(counter, key);
  }
  return counter;
}

// Uniform/normal draws from one Philox stream. Counter layout: words 0-1
// hold the stream index, words 2-3 the block counter within the stream.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream_index)),
        stream_hi_(static_cast<std::uint32_t>(stream_index >> 32)) {}

  std::uint32_t next_u32() {
    if (pos_ == 4) {
      buf_ = philox4x32({stream_lo_, stream_hi_,
                         static_cast<std::uint32_t>(block_),
                         static_cast<std::uint32_t>(block_ >> 32)},
                        key_);
      ++block_;
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on [0, 1), 53-bit mantissa.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double next_double_open0() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_double_open0();
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;  // 4 == buffer exhausted
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ifm
