// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace subweibull {

// Philox4x32-10. Every output block is a pure function of (key, counter),
// so draws can be generated in any order or on any thread.
class philox4x32 {
 public:
  using block = std::array<std::uint32_t, 4>;

  explicit philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  block operator()(block ctr) const {
    std::array<std::uint32_t, 2> k = key_;
    for (int r = 0; r < 10; ++r) {
      ctr = round(ctr, k);
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    return ctr;
  }

 private:
  static block round(const block& c, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  std::array<std::uint32_t, 2> key_;
};

// Two open-interval uniforms for draw `index` of `replicate` in `stream`.
struct uniform_pair {
  double u0;
  double u1;
};

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t x = (std::uint64_t{hi} << 32) | lo;
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

inline uniform_pair uniforms(const philox4x32& gen, std::uint32_t stream, std::uint64_t replicate,
                             std::uint32_t index) {
  const auto out = gen({index, static_cast<std::uint32_t>(replicate),
                        static_cast<std::uint32_t>(replicate >> 32), stream});
  return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
}

// FNV-1a, used for stream ids and content hashes.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint32_t stream_id(std::string_view label) {
  const std::uint64_t h = fnv1a64(label);
  return static_cast<std::uint32_t>(h ^ (h >> 32));
}

}  // namespace subweibull
