#pragma once

// Physical constants and the bridge between SI and the internal unit system.
//
// Everything inside the library is expressed in Hartree atomic units
// (hbar = e = m_e = 1, 4 pi eps0 = 1, mu0 / 4 pi = alpha_fs^2). In these
// units the Bohr magneton is 1/2, energies and angular frequencies share one
// scale, and the on-axis dipole field is literally 2 alpha_fs^2 mu / R^3.
// Frequencies are always held as angular frequencies internally.

#include <numbers>
#include <string_view>

namespace ramanqc::units {

enum class Dimension {
  Energy,             // J
  AngularFrequency,   // rad/s
  OrdinaryFrequency,  // Hz
  Length,             // m
  Time,               // s
  MagneticField,      // T
  Mass,               // kg
  MagneticMoment,     // J/T
  SpectralDensityB,   // T^2/Hz
};

std::string_view to_string(Dimension d);
// Throws Error{UnsupportedDimension} for unknown names.
Dimension dimension_from_string(std::string_view name);

// A value in SI units tagged with its dimension.
struct Quantity {
  double value = 0.0;
  Dimension dimension = Dimension::Energy;
};

namespace si {
// CODATA 2018
inline constexpr double kBohrRadius = 5.29177210903e-11;        // m
inline constexpr double kHartreeEnergy = 4.3597447222071e-18;   // J
inline constexpr double kAtomicTime = 2.4188843265857e-17;      // s
inline constexpr double kElectronMass = 9.1093837015e-31;       // kg
inline constexpr double kBohrMagneton = 9.2740100783e-24;       // J/T
inline constexpr double kAtomicMagneticField = 2.35051756758e5; // T
inline constexpr double kHbar = 1.054571817e-34;                // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;    // kg
}  // namespace si

inline constexpr double kFineStructure = 7.2973525693e-3;
inline constexpr double kBohrMagneton = 0.5;  // internal
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// SI value of one internal unit of the given dimension. Throws
// Error{UnsupportedDimension} on an out-of-range enum value.
double si_per_internal(Dimension d);

// SI -> internal. Throws Error{NonFinite} for NaN/inf input.
double to_internal(const Quantity& q);
// internal -> SI. Throws Error{NonFinite} for NaN/inf input.
Quantity from_internal(double value, Dimension d);

// Shorthands used throughout the library and tests.
inline double hz(double f) { return to_internal({f, Dimension::OrdinaryFrequency}); }
inline double rad_per_s(double w) { return to_internal({w, Dimension::AngularFrequency}); }
inline double meters(double x) { return to_internal({x, Dimension::Length}); }
inline double nanometers(double x) { return meters(x * 1e-9); }
inline double seconds(double t) { return to_internal({t, Dimension::Time}); }
inline double tesla(double b) { return to_internal({b, Dimension::MagneticField}); }
inline double amu(double m) { return to_internal({m * si::kAtomicMassUnit, Dimension::Mass}); }

inline double to_seconds(double t) { return from_internal(t, Dimension::Time).value; }
inline double to_meters(double x) { return from_internal(x, Dimension::Length).value; }
inline double to_tesla(double b) { return from_internal(b, Dimension::MagneticField).value; }
inline double to_rad_per_s(double w) { return from_internal(w, Dimension::AngularFrequency).value; }
inline double to_hz(double w) { return from_internal(w, Dimension::OrdinaryFrequency).value; }
inline double to_amu(double m) { return from_internal(m, Dimension::Mass).value / si::kAtomicMassUnit; }

}  // namespace ramanqc::units
