#pragma once

#include <cstdint>
#include <random>

namespace kickchain {

/// Independent, reproducible random stream for one trajectory.
///
/// Streams are named by (master seed, stream id); the pair is hashed with
/// SplitMix64 to seed a 64-bit Mersenne Twister. Uniform doubles are built from
/// the top 53 bits directly, so a stream yields the same sequence on every
/// platform that provides std::mt19937_64.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_id);

  /// Uniform on [0, 1).
  double uniform() noexcept;

  /// Uniform on [0, 2 pi).
  double uniform_angle() noexcept;

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace kickchain
