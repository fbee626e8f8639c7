#pragma once

#include <cstdint>

namespace radconc {

/// Serial runs the reference loop; Parallel runs the OpenMP kernel. Both give
/// bit-identical results for the same inputs.
enum class Exec { Serial, Parallel };

/// Monte-Carlo work is cut into this many fixed chunks, each with its own PRNG
/// stream, so results do not depend on the thread count.
inline constexpr int kMonteCarloChunks = 64;

/// splitmix64 finalizer, used to derive per-chunk seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace radconc
