#include "nimbergeo/nimber.hpp"

namespace nimbergeo {

namespace detail {

std::uint32_t mex_raw(const std::vector<std::uint32_t>& values) {
  // Any value above values.size() cannot affect the answer: among
  // 0..values.size() at least one integer is missing.
  const std::size_t n = values.size();
  std::vector<bool> seen(n + 1, false);
  for (std::uint32_t v : values) {
    if (v <= n) seen[v] = true;
  }
  for (std::uint32_t i = 0;; ++i) {
    if (!seen[i]) return i;
  }
}

}  // namespace detail

Nimber mex(const std::vector<Nimber>& values) {
  std::vector<std::uint32_t> raw;
  raw.reserve(values.size());
  for (Nimber v : values) raw.push_back(v.value);
  return Nimber{detail::mex_raw(raw)};
}

}  // namespace nimbergeo
