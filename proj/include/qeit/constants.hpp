#pragma once

namespace qeit {

// CODATA 2018, SI units. Centralized so every derived number traces to one table.
inline constexpr double hbar    = 1.054571817e-34;   // J*s
inline constexpr double eps0    = 8.8541878128e-12;  // F/m
inline constexpr double c_light = 2.99792458e8;      // m/s

inline constexpr const char* constants_version = "CODATA-2018";

} // namespace qeit
