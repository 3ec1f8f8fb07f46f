#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace lgsbm {

using Seed = std::uint64_t;

/// One step of SplitMix64. Advances `state` and returns a well-mixed output.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of an independent substream identified by `path` under `seed`.
///
/// The path is folded through SplitMix64 one component at a time, so
/// (seed, n, replicate, purpose) tuples map to unrelated 64-bit seeds and a
/// replicate's randomness never depends on which other replicates ran.
constexpr Seed derive_seed(Seed seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t state = seed;
  std::uint64_t out = splitmix64(state);
  for (std::uint64_t component : path) {
    state = out ^ (component * 0xd1b54a32d192ed03ULL + 0x8bb84b93962eacc9ULL);
    out = splitmix64(state);
  }
  return out;
}

/// xoshiro256** with its 256-bit state expanded from a 64-bit seed by
/// SplitMix64, as recommended by its authors. Satisfies
/// UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(Seed seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a logarithm argument.
  double uniform_pos() noexcept { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace lgsbm
