#include "util/rng.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace smtpflow::util {

uint64_t RandomStream::uniform_u64(uint64_t lo, uint64_t hi) {
  if (lo > hi) raise(Errc::internal, "uniform_u64: lo > hi");
  uint64_t span = hi - lo;
  if (span == UINT64_MAX) return engine_();
  // Lemire-style scaling; bias is span/2^64 and irrelevant at our ranges.
  unsigned __int128 wide = static_cast<unsigned __int128>(engine_()) * (span + 1);
  return lo + static_cast<uint64_t>(wide >> 64);
}

int64_t RandomStream::uniform_i64(int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(uniform_u64(0, static_cast<uint64_t>(hi - lo)));
}

double RandomStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal01() {
  double u1 = 1.0 - uniform01();  // (0, 1]
  double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

size_t RandomStream::categorical(std::span<const double> weights) {
  double total = 0;
  for (double w : weights) total += w;
  if (total <= 0) raise(Errc::internal, "categorical: non-positive weight sum");
  double x = uniform01() * total;
  double acc = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (x < acc) return i;
  }
  return weights.size() - 1;
}

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace smtpflow::util
