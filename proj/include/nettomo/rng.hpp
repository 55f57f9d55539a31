#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace nettomo {

// Counter-based random streams: every draw is a pure function of (key, index),
// so samples are reproducible regardless of evaluation order or thread count.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// i-th word of the stream identified by `key` (splitmix64 with jumpable state)
inline std::uint64_t stream_word(std::uint64_t key, std::uint64_t i) {
  return mix64(key + (i + 1) * kGolden);
}

// derive a child stream key (seed -> trial -> probe -> copy chains)
inline std::uint64_t derive_key(std::uint64_t parent, std::uint64_t child) {
  return mix64(parent ^ mix64(child * kGolden + 0x5851f42d4c957f2dULL));
}

// uniform in the open interval (0,1); never returns 0 or 1
inline double u01(std::uint64_t word) {
  return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

// i-th standard normal of a stream; Box-Muller, two words per draw
inline double normal(std::uint64_t key, std::uint64_t i) {
  double a = u01(stream_word(key, 2 * i));
  double b = u01(stream_word(key, 2 * i + 1));
  return std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * std::numbers::pi * b);
}

// convenience sequential wrapper for places that just need "some random values"
// (test-scenario generation), still fully determined by the key
struct SeqRng {
  std::uint64_t key = 0;
  std::uint64_t ctr = 0;
  explicit SeqRng(std::uint64_t k) : key(k) {}
  std::uint64_t word() { return stream_word(key, ctr++); }
  double uniform() { return u01(word()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // inclusive bounds
  long long integer(long long lo, long long hi) {
    return lo + static_cast<long long>(word() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double gaussian() {
    double a = u01(word());
    double b = u01(word());
    return std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * std::numbers::pi * b);
  }
};

}  // namespace nettomo
