#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace graphonlab {

// Seeded random stream. A (seed, stream) pair fixes every draw; the bounded
// and real-valued helpers avoid std distributions so that output is
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0, ..., bound-1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

  // Index drawn with probability proportional to cumulative[i] - cumulative[i-1];
  // `cumulative` is nondecreasing with last entry 1.
  std::size_t categorical(std::span<const double> cumulative);

  // Independent child stream, keyed by the next draw of this stream and `index`.
  Rng split(std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace graphonlab
