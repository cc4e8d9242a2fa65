#pragma once

#include <cstdint>

#include "edgevote/rational.hpp"

namespace edgevote {

// Counter-based randomness: every random decision is a pure function of
// (seed, stream tag, counters).  Results are therefore independent of
// iteration order and of how work is partitioned across threads, and
// bit-identical across platforms.

// stream tags keep independent uses of the same (seed, counters) apart
enum : std::uint64_t {
  kStreamLabel = 0x01,
  kStreamValue = 0x02,
  kStreamBlock = 0x03,
  kStreamMc = 0x04,
  kStreamMcBlock = 0x05,
  kStreamReplicate = 0x06,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a) {
  return splitmix64(splitmix64(seed) ^ a);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(mix(seed, a) ^ b);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return splitmix64(mix(seed, a, b) ^ c);
}

// Exact Bernoulli(p) from one uniform word: true iff word < p * 2^64,
// decided in integer arithmetic so the comparison is never rounded.
inline bool bernoulli_bit(std::uint64_t word, const Rational& p) {
  const unsigned __int128 lhs = static_cast<unsigned __int128>(word) * static_cast<std::uint64_t>(p.den);
  const unsigned __int128 rhs = static_cast<unsigned __int128>(static_cast<std::uint64_t>(p.num)) << 64;
  return lhs < rhs;
}

inline bool fair_bit(std::uint64_t word) { return (word >> 63) != 0; }

}  // namespace edgevote
