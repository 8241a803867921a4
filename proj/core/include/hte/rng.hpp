#pragma once

#include <cstdint>
#include <random>

namespace hte {

/// Seeded random stream.
///
/// Streams are identified by a 64-bit seed. Independent substreams are derived
/// from the seed alone (never from the current engine state), so the stream
/// handed to ensemble member t is the same no matter how many draws other
/// members made or in which order members were fitted.
class Rng {
public:
  using engine_type = std::mt19937_64;

  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  /// Child stream number `index`; a pure function of (seed(), index).
  Rng substream(std::uint64_t index) const;

  /// Uniform on [0, 1).
  double uniform();
  double normal();

  engine_type& engine() noexcept { return engine_; }

private:
  std::uint64_t seed_;
  engine_type engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// SplitMix64 finalizer; used to scatter (seed, index) pairs.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace hte
