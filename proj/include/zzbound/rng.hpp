// Caller-owned random state.  Streams are fully deterministic given the
// seed, portable across platforms (no implementation-defined distributions),
// and cheap to fork into independent substreams for parallel Monte-Carlo.
#pragma once

#include <cstdint>
#include <random>

namespace zzb {

// splitmix64 mixing step; used both to seed mt19937_64 defensively and to
// derive independent per-chunk seeds from a base seed.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic seed for substream `index` of a stream rooted at `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  std::uint64_t derived = splitmix64_next(state);
  state = derived ^ (index * 0xd6e8feb86659fd93ULL + 0xa5a5a5a5a5a5a5a5ULL);
  return splitmix64_next(state);
}

class RngState {
 public:
  explicit RngState(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64_next(s));
  }

  std::uint64_t seed() const { return seed_; }

  // Uniform variate on the open interval (0, 1), built from the top 53 bits
  // of the engine output; identical bits on every platform.
  double uniform01() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace zzb
