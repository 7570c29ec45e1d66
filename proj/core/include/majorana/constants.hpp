#pragma once

#include <numbers>

// CODATA 2018 values. Everything inside the library is SI; the lab units
// below are only used when a TrapConfig is converted.
namespace majorana::constants {

inline constexpr double bohr_magneton = 9.2740100783e-24; // J/T
inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double boltzmann = 1.380649e-23;         // J/K

inline constexpr double tesla_per_gauss = 1e-4;
inline constexpr double tesla_per_meter_per_gauss_per_cm = 1e-2;
inline constexpr double tesla_per_meter2_per_gauss_per_cm2 = 1.0;
inline constexpr double meter_per_cm = 1e-2;

inline constexpr double pi = std::numbers::pi;

} // namespace majorana::constants
