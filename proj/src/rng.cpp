#include "ustatboot/rng.hpp"

#include <array>

namespace ustatboot {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Engine substream(std::uint64_t seed, std::uint64_t stream, StreamTag tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(tag)};
  return Engine(seq);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, StreamTag tag) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ index);
  return splitmix64(h ^ static_cast<std::uint64_t>(tag));
}

std::uint64_t entropy_seed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

double open_uniform(Engine& engine) {
  // 53 random bits mapped to (0, 1): (k + 0.5) / 2^53.
  const std::uint64_t bits = engine() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace ustatboot
