#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace heytica {

/// Subset of the points of a poset. Posets are capped at 64 points so a
/// subset always fits in one machine word.
using Bits = std::uint64_t;

inline constexpr int kMaxPoints = 64;

inline constexpr Bits bit(int i) { return Bits{1} << i; }
inline constexpr bool has(Bits s, int i) { return (s >> i) & 1U; }
inline constexpr Bits full_mask(int n) { return n >= 64 ? ~Bits{0} : bit(n) - 1; }
inline int popcount(Bits s) { return std::popcount(s); }
inline int lowest(Bits s) { return std::countr_zero(s); }

/// Calls `fn(i)` for every member of `s` in increasing order.
template <class F>
void for_each_bit(Bits s, F&& fn) {
  while (s) {
    int i = std::countr_zero(s);
    fn(i);
    s &= s - 1;
  }
}

inline std::vector<int> members(Bits s) {
  std::vector<int> out;
  for_each_bit(s, [&](int i) { out.push_back(i); });
  return out;
}

}  // namespace heytica
