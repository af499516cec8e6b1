#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace copnum {

using Rng = std::mt19937_64;

// Mixes a master seed with a task index into an independent stream seed
// (splitmix64 finalizer). Used so parallel tasks never share RNG state.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

// k distinct values from [0, n), in sampling order (partial Fisher-Yates).
std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k,
                                                      Rng& rng);

}  // namespace copnum
