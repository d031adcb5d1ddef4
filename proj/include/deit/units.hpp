#pragma once

// Physical constants and the single unit-conversion boundary of the simulator.
//
// Convention: optical rates, Rabi frequencies and detunings are ordinary
// frequencies in MHz. Ground-state collision rates (ToP, Zeeman mixing) are
// entered in Hz and converted with hz_to_mhz() before they meet MHz rates.

namespace deit::units {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double kBoltzmann = 1.380649e-23;         // J/K
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kCesiumMassAmu = 132.905451931;
inline constexpr double kCesiumMass = kCesiumMassAmu * kAtomicMassUnit;  // kg
inline constexpr double kCesiumD1Wavelength = 894.59295986e-9;        // m
inline constexpr double kCesiumD1Wavenumber = 2.0 * kPi / kCesiumD1Wavelength;  // rad/m

inline constexpr double kCesiumExcitedDecayMHz = 4.6;   // Gamma_c for the D1 line
inline constexpr double kSaturationIntensity = 2.5;     // mW/cm^2
inline constexpr double kSpinExchangeCoefficient = 6e-10;  // cm^3/s, ToP rate = kappa * N

inline constexpr double kZeroCelsius = 273.15;

inline constexpr double hz_to_mhz(double hz) { return hz * 1e-6; }
inline constexpr double mhz_to_hz(double mhz) { return mhz * 1e6; }
inline constexpr double celsius_to_kelvin(double c) { return c + kZeroCelsius; }

}  // namespace deit::units
