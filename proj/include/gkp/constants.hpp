#pragma once

// Fundamental physical constants (SI units, CODATA 2018).
// Every module pulls its constants from here; no local redefinitions.

namespace gkp::consts {

inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double eps0 = 8.8541878128e-12;    // F / m
inline constexpr double c_light = 2.99792458e8;     // m / s

}  // namespace gkp::consts
