#pragma once

#include <cstdint>
#include <limits>

namespace strengthlab {

/// base^exponent, saturating at UINT64_MAX.
inline std::uint64_t saturating_power(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

}  // namespace strengthlab
