#pragma once

#include <cstdint>
#include <random>

namespace ustatboot {

using Engine = std::mt19937_64;

/// Domain separation for substreams drawn from one user seed.
enum class StreamTag : std::uint32_t {
  Multiplier = 1,
  Data = 2,
  Truth = 3,
  Replicate = 4,
};

/// Substream `stream` of `seed` for the given purpose.
///
/// The engine is seeded through std::seed_seq with the words
/// {seed_lo, seed_hi, stream_lo, stream_hi, tag}, so distinct (seed, stream,
/// tag) triples give unrelated engines and the mapping is fixed by the
/// standard library's seed_seq algorithm.
Engine substream(std::uint64_t seed, std::uint64_t stream, StreamTag tag);

/// A derived 64-bit seed (splitmix64 mixing of seed, index and tag). Used to
/// hand a child computation its own seed space.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, StreamTag tag) noexcept;

/// A fresh seed from std::random_device.
std::uint64_t entropy_seed();

/// Uniform draw strictly inside (0, 1).
double open_uniform(Engine& engine);

}  // namespace ustatboot
