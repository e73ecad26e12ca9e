#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ckr {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Seeded random source. All randomness in the library flows through this
// class so that a run is reproducible from one master seed. Substreams are
// derived deterministically from (key, label, indices); the labeling scheme
// is module name + scale index + iteration index.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : key_(seed) {
    std::uint64_t s = seed;
    engine_.seed(detail::splitmix64(s));
  }

  std::uint64_t key() const { return key_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound), bias-free via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Knuth shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  RandomSource substream(std::string_view label, std::uint64_t a = 0,
                         std::uint64_t b = 0) const {
    std::uint64_t s = key_;
    s ^= detail::splitmix64(s) ^ detail::fnv1a(label);
    s ^= detail::splitmix64(s) ^ a;
    s ^= detail::splitmix64(s) ^ b;
    return RandomSource(detail::splitmix64(s));
  }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace ckr
