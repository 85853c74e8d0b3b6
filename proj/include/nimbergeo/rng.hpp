#pragma once

#include <cstdint>
#include <random>

namespace nimbergeo {

/// splitmix64 step; used to derive independent sub-seeds from (seed, stream)
/// pairs so that instance i of a corpus never shares state with instance j.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x165667b19e3779f9ULL);
}

/// Deterministic random source. mt19937_64 output is fully pinned by the
/// standard, and bounded draws use rejection sampling instead of
/// std::uniform_int_distribution (whose mapping is implementation-defined),
/// so identical seeds give identical corpora on every platform.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform draw from [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform draw from [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// True with probability p (p in [0,1]).
  bool coin(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    // Compare against a fixed-point threshold; the double->u64 conversion is
    // exact for the 2^53 grid, identical everywhere.
    const auto threshold = static_cast<std::uint64_t>(p * 18446744073709551616.0);
    return engine_() < threshold;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nimbergeo
