#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter), mixed with the SplitMix64 finalizer. Output is
// identical across platforms and independent of evaluation order, so
// record i of a dataset can be produced by any worker.

#include <cmath>
#include <cstdint>

namespace lossless {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(seed ^ splitmix64(stream))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const { return splitmix64(key_ ^ splitmix64(counter + 0x632be59bd9b4e019ULL)); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., bound - 1}. Bias is below 2^-32 for bound < 2^32.
  std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(counter)) * bound) >> 64);
  }

  /// Standard exponential, used for uniform draws on the simplex.
  double exponential(std::uint64_t counter) const { return -std::log1p(-uniform(counter)); }

 private:
  std::uint64_t key_;
};

/// Sequential convenience wrapper over CounterRng for small draws.
class SeqRng {
 public:
  explicit SeqRng(std::uint64_t seed, std::uint64_t stream = 0) : rng_(seed, stream) {}

  std::uint64_t bits() { return rng_.bits(next_++); }
  double uniform() { return rng_.uniform(next_++); }
  std::uint64_t below(std::uint64_t bound) { return rng_.below(next_++, bound); }
  double exponential() { return rng_.exponential(next_++); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace lossless
