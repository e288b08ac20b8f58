#pragma once

#include <array>
#include <cstdint>

namespace depgini {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al. counter-based generator).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Maps 64 random bits to the open interval (0, 1) on a 2^-52 grid offset by half a step.
inline double uniform_from_bits(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace depgini
