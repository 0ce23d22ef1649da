#pragma once

#include <cstdint>

namespace yule {

/// Counter-based stream: output k is the SplitMix64 finalizer applied to
/// key + k * 0x9E3779B97F4A7C15, where key is derived from (seed, index).
/// Streams for different indices are independent of evaluation order.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal by inverse CDF.
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

}  // namespace yule
