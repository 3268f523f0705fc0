#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace fraclocal {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

// Counter-based generator: the stream for a key is fixed, so node randomness
// can be regenerated from (seed, id, round) without shared state.
class CounterStream {
 public:
  using result_type = std::uint64_t;
  explicit CounterStream(std::uint64_t key) : key_(key) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return mix64(key_ ^ mix64(counter_++)); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Fixed formulas rather than <random> distributions so draws are identical
// across standard library implementations.
inline double uniform01(CounterStream& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::uint64_t uniform_below(CounterStream& rng, std::uint64_t bound) {
  // rejection keeps the draw exactly uniform
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

inline double exponential(CounterStream& rng, double rate) { return -std::log1p(-uniform01(rng)) / rate; }

}  // namespace fraclocal
