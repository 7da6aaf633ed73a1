#ifndef PRODSPEC_RNG_HPP
#define PRODSPEC_RNG_HPP

#include <cstdint>

namespace prodspec {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for the idx-th independent stream (one per grid energy, say), so that
// results do not depend on which thread handles which index.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t idx) {
  return mix64(seed ^ mix64(idx + 0x632BE59BD9B4E019ULL));
}

// Counter-based stream: the i-th draw is a pure function of (seed, i).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t operator()() { return mix64(seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1p-53; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace prodspec

#endif  // PRODSPEC_RNG_HPP
