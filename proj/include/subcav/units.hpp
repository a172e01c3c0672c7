#pragma once

// Gaussian-CGS physical constants and conversions from the practical units
// used at the I/O boundary (um, nm, meV, ps, e*nm).

#include <numbers>

namespace subcav::units {

inline constexpr double pi = std::numbers::pi;

// cm/s
inline constexpr double c_light = 2.99792458e10;
// erg*s
inline constexpr double hbar = 1.054571817e-27;
// esu, e_SI * c_SI * 10
inline constexpr double e_charge = 1.602176634e-19 * 2.99792458e9;
// g
inline constexpr double electron_mass = 9.1093837015e-28;
// erg/K
inline constexpr double k_boltzmann = 1.380649e-16;

inline constexpr double erg_per_meV = 1.602176634e-15;
inline constexpr double cm_per_um = 1e-4;
inline constexpr double cm_per_nm = 1e-7;

constexpr double um(double value) { return value * cm_per_um; }
constexpr double nm(double value) { return value * cm_per_nm; }
constexpr double meV(double value) { return value * erg_per_meV; }

/// Angular frequency (rad/s) whose quantum hbar*omega equals the given energy.
constexpr double omega_from_meV(double energy_meV) { return meV(energy_meV) / hbar; }
constexpr double meV_from_omega(double omega) { return omega * hbar / erg_per_meV; }

constexpr double rate_from_per_ps(double per_ps) { return per_ps * 1e12; }

/// Dipole moment of one elementary charge displaced by the given length.
constexpr double dipole_e_nm(double length_nm) { return e_charge * nm(length_nm); }

constexpr double to_um(double cm) { return cm / cm_per_um; }
constexpr double to_nm(double cm) { return cm / cm_per_nm; }

}  // namespace subcav::units
