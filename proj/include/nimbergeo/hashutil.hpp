#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace nimbergeo::detail {

/// Incremental FNV-1a, used for content fingerprints of immutable game
/// structures. Fingerprints are stable across runs and platforms; they are
/// used to tag memo keys, never as a substitute for structural equality.
class Fnv1a {
 public:
  void feed_bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state_ ^= p[i];
      state_ *= 1099511628211ULL;
    }
  }

  void feed(std::string_view s) {
    feed_u64(s.size());
    feed_bytes(s.data(), s.size());
  }

  void feed_u64(std::uint64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    feed_bytes(bytes, 8);
  }

  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 1469598103934665603ULL;
};

}  // namespace nimbergeo::detail
