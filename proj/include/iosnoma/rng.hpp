#pragma once

#include <cstdint>
#include <limits>

namespace iosnoma {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based generator: output n of a stream is mix64(key + (n+1) * golden),
// i.e. SplitMix64 started at `key`. Any substream is addressable by its key
// alone, so results do not depend on which thread consumes which stream.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1); safe to take the log of.
  double uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Key of the substream for one (trial, user) pair under a run seed.
inline constexpr std::uint64_t substream_key(std::uint64_t seed, std::uint64_t trial, std::uint64_t user) {
  return mix64(mix64(seed ^ 0x6A09E667F3BCC908ULL) ^ mix64(trial * 4 + user + 0x3C6EF372FE94F82BULL));
}

}  // namespace iosnoma
