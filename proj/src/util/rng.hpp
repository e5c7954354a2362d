#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace smtpflow::util {

/// Seeded random stream with hand-rolled draw algorithms so that equal seeds
/// give bit-identical sequences on every platform (std::*_distribution is
/// implementation-defined).
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform on [lo, hi], inclusive.
  uint64_t uniform_u64(uint64_t lo, uint64_t hi);
  int64_t uniform_i64(int64_t lo, int64_t hi);

  /// Uniform on [0, 1).
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal (Box-Muller, two fresh uniforms per call).
  double normal01();

  /// Index drawn proportionally to `weights` (need not be normalized).
  size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

/// 64-bit mix for composite hash keys (splitmix64 finalizer).
uint64_t mix64(uint64_t x);

}  // namespace smtpflow::util
