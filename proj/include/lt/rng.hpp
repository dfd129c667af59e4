#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace lt {

// splitmix64, used to derive independent sub-seeds from (seed, label) so that
// check results do not depend on scheduling order.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, const std::string& label) {
  uint64_t h = splitmix64(seed);
  for (unsigned char c : label) h = splitmix64(h ^ c);
  return h;
}

inline uint64_t derive_seed(uint64_t seed, const std::string& label, uint64_t n) {
  return splitmix64(derive_seed(seed, label) ^ splitmix64(n));
}

// mt19937_64 is fully specified by the standard, so streams are identical
// across platforms and compilers.
using Rng = std::mt19937_64;

}  // namespace lt
