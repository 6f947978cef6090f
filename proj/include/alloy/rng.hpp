#pragma once

#include <array>
#include <cstdint>

#include "alloy/geometry.hpp"

namespace alloy::rng {

// Philox4x32-10 counter-based generator (as in Random123).  Chosen over
// a stateful engine so that every coupling value is a pure function of
// (master seed, sample index, site): iteration order and thread count cannot
// change a single bit of any experiment.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic 64-bit fold of a site's coordinates (dimension included so
// (0) in 1D and (0,0) in 2D land on different streams).
inline std::uint64_t site_key(const Point& site) {
  std::uint64_t h = splitmix64(0x73697465ull ^ site.size());
  for (int c : site)
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
  return h;
}

// One uniform [0,1) draw for (master_seed, sample_index, site).
inline double site_uniform(std::uint64_t master_seed, std::uint64_t sample_index,
                           const Point& site) {
  const std::uint64_t h = site_key(site);
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(sample_index),
      static_cast<std::uint32_t>(sample_index >> 32),
      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(master_seed),
      static_cast<std::uint32_t>(master_seed >> 32)};
  const auto out = Philox4x32::block(ctr, key);
  const std::uint64_t bits = (std::uint64_t{out[0]} << 32) | out[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Derived seed streams (pilot spectra etc.) that never collide with the
// per-sample streams of the same master seed.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) {
  return splitmix64(master_seed ^ splitmix64(tag));
}

}  // namespace alloy::rng
