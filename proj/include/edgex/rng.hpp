#ifndef EDGEX_RNG_HPP
#define EDGEX_RNG_HPP

#include <cstdint>
#include <random>

namespace edgex {

using Rng = std::mt19937_64;

// Stream tags keep the derived seeds of unrelated consumers apart.
enum class StreamTag : std::uint64_t {
  Weights = 0x77656967687473ULL,
  Steps = 0x7374657073ULL,
  Replicate = 0x7265706cULL,
  PoissonSteps = 0x706f6973ULL,
};

// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of substream `index` under `base`. Documented derivation:
// derive_seed(b, i) = mix64(mix64(b) ^ mix64(i + golden)).
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(base) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t base, StreamTag tag,
                                    std::uint64_t index) noexcept {
  return derive_seed(derive_seed(base, static_cast<std::uint64_t>(tag)),
                     index);
}

inline Rng make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  return Rng(seq);
}

inline Rng make_rng(std::uint64_t base, StreamTag tag, std::uint64_t index) {
  return make_rng(derive_seed(base, tag, index));
}

// Uniform draw on [0, 1).
inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace edgex

#endif  // EDGEX_RNG_HPP
