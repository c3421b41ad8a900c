#pragma once

#include <cmath>
#include <cstdint>

namespace pdmp {

/// Counter-based pseudo-random stream built on the SplitMix64 finalizer.
///
/// A draw is a pure function of (seed, stream_id, counter), so the stream
/// with id i can be reconstructed anywhere: batches split by trajectory
/// index give the same numbers regardless of scheduling or thread count.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : key_(mix(mix(seed + kGolden) ^ mix(stream_id ^ kLeaf))) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform draw strictly inside (0, 1).
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard exponential via inversion; strictly positive.
  double exponential() { return -std::log(uniform01()); }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kLeaf = 0xd1b54a32d192ed03ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace pdmp
