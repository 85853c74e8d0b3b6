#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace nimbergeo {

/// Grundy value of an impartial game position under normal play.
/// Wrapped in a struct so a nimber cannot be mixed up with a plain count.
struct Nimber {
  std::uint32_t value = 0;

  constexpr Nimber() = default;
  constexpr explicit Nimber(std::uint32_t v) : value(v) {}

  friend constexpr bool operator==(const Nimber&, const Nimber&) = default;
  friend constexpr auto operator<=>(const Nimber&, const Nimber&) = default;
};

/// Minimum excludant: least non-negative integer absent from `values`.
/// Duplicates are allowed and ignored; the empty list yields 0.
Nimber mex(const std::vector<Nimber>& values);

/// Nimber addition: the value of a disjunctive sum is the bitwise xor of the
/// summands' values.
constexpr Nimber nim_sum(Nimber a, Nimber b) { return Nimber{a.value ^ b.value}; }

namespace detail {
std::uint32_t mex_raw(const std::vector<std::uint32_t>& values);
}

}  // namespace nimbergeo
