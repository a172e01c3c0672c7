#pragma once

// Golden-rule spontaneous emission rates into the strip line, the waveguide
// and a single cavity mode, the free-space reference rate, and the Purcell
// ratio of a cavity filled with a uniform dielectric.

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>

#include "subcav/dielectric.hpp"
#include "subcav/emitter.hpp"
#include "subcav/error.hpp"
#include "subcav/modes.hpp"
#include "subcav/units.hpp"

namespace subcav {

enum class RateGeometry { PlaneWave, Waveguide, Cavity, FreeSpace };

inline std::string to_string(RateGeometry g)
{
    switch (g) {
    case RateGeometry::PlaneWave: return "plane_wave";
    case RateGeometry::Waveguide: return "waveguide";
    case RateGeometry::Cavity: return "cavity";
    case RateGeometry::FreeSpace: return "free_space";
    }
    return "unknown";
}

struct RateResult
{
    /// 1/s
    double rate = 0.0;
    RateGeometry geometry = RateGeometry::PlaneWave;
    /// frequency at which the dipole and the dispersion were evaluated, rad/s
    double omega_used = 0.0;
    /// |q| or qx for propagating modes, 1/cm
    double wavenumber = 0.0;
    /// d omega / dq, cm/s (0 for cavity and free space)
    double group_velocity = 0.0;
    /// G(Lz, omega) in cm
    double g = 0.0;
    /// |d_eff|, esu*cm
    double dipole = 0.0;
};

namespace detail {

/// K^2 balancing the dispersion relation at omega.
inline double dispersion_k2(const DielectricStack& stack, double omega)
{
    if (!stack.transparent_at(omega)) {
        std::ostringstream msg;
        msg << "no propagating quasi-TEM mode at omega=" << omega << " rad/s (stack not transparent)";
        fail(ErrorKind::NoPropagatingMode, msg.str());
    }
    const double inv = stack.inv_eps_integral(omega);
    return omega * omega * stack.thickness() / (units::c_light * units::c_light * inv);
}

/// dK/d omega^-1 by implicit differentiation of omega^2 Lz = K^2 c^2 I(omega):
/// d omega / dK = K c^2 I^2 / (Lz omega G).
inline double dispersion_slope(const DielectricStack& stack, double omega, double k)
{
    const double inv = stack.inv_eps_integral(omega);
    return k * units::c_light * units::c_light * inv * inv
           / (stack.thickness() * omega * stack.g_factor(omega));
}

}  // namespace detail

/// Group velocity d omega / d|q| of the strip-line plane wave at omega.
inline double group_velocity_planewave(const DielectricStack& stack, double omega)
{
    const double q = std::sqrt(detail::dispersion_k2(stack, omega));
    return detail::dispersion_slope(stack, omega, q);
}

/// Rate into strip-line plane waves:
/// A = 2 pi |d~|^2 omega |q| / (hbar |d omega/dq| G).
inline RateResult rate_planewave(std::complex<double> d_eff, const DielectricStack& stack, double omega21)
{
    RateResult r;
    r.geometry = RateGeometry::PlaneWave;
    r.omega_used = omega21;
    r.wavenumber = std::sqrt(detail::dispersion_k2(stack, omega21));
    r.group_velocity = detail::dispersion_slope(stack, omega21, r.wavenumber);
    if (!(r.group_velocity > 0.0) || !std::isfinite(r.group_velocity)) {
        fail(ErrorKind::ZeroGroupVelocity, "strip-line group velocity vanishes");
    }
    r.g = stack.g_factor(omega21);
    r.dipole = std::abs(d_eff);
    r.rate = 2.0 * units::pi * std::norm(d_eff) * omega21 * r.wavenumber
             / (units::hbar * r.group_velocity * r.g);
    return r;
}

inline RateResult rate_planewave(const EmitterSheet& sheet, const DielectricStack& stack, double omega21)
{
    return rate_planewave(effective_dipole(sheet, stack, omega21), stack, omega21);
}

/// Rate into the fundamental waveguide mode:
/// A = 2 pi |d~|^2 omega / (hbar |d omega/dqx| Ly G).
inline RateResult rate_waveguide(std::complex<double> d_eff, const DielectricStack& stack,
                                 const Geometry& geometry, double omega21)
{
    const double k2 = detail::dispersion_k2(stack, omega21);
    const double py = units::pi / geometry.Ly;
    const double qx2 = k2 - py * py;
    if (qx2 < 0.0) {
        std::ostringstream msg;
        msg << "omega21=" << omega21 << " rad/s is below the waveguide cutoff";
        fail(ErrorKind::BelowCutoff, msg.str());
    }
    RateResult r;
    r.geometry = RateGeometry::Waveguide;
    r.omega_used = omega21;
    r.wavenumber = std::sqrt(qx2);
    r.group_velocity = detail::dispersion_slope(stack, omega21, r.wavenumber);
    if (!(r.group_velocity >= 1e-6 * units::c_light)) {
        fail(ErrorKind::AtCutoff, "group velocity below 1e-6 c at the waveguide cutoff; use the cavity rate");
    }
    r.g = stack.g_factor(omega21);
    r.dipole = std::abs(d_eff);
    r.rate = 2.0 * units::pi * std::norm(d_eff) * omega21
             / (units::hbar * r.group_velocity * geometry.Ly * r.g);
    return r;
}

inline RateResult rate_waveguide(const EmitterSheet& sheet, const DielectricStack& stack,
                                 const Geometry& geometry, double omega21)
{
    return rate_waveguide(effective_dipole(sheet, stack, omega21), stack, geometry, omega21);
}

/// Single cavity mode with an effective linewidth delta_omega:
/// A = 2 pi |d~|^2 (4 omega21 / delta_omega) / (hbar Lx Ly G(omega_nu)).
inline double cavity_rate_formula(std::complex<double> d_eff, double omega21, double delta_omega,
                                  const Geometry& geometry, double g)
{
    if (!(delta_omega > 0.0)) {
        fail(ErrorKind::InvalidArgument, "cavity linewidth delta_omega must be positive");
    }
    return 2.0 * units::pi * std::norm(d_eff) * (4.0 * omega21 / delta_omega)
           / (units::hbar * geometry.area() * g);
}

/// Cavity rate at the solved mode frequency omega_nu, with omega21 taken at the
/// band edge of the sheet.
inline RateResult rate_cavity(const EmitterSheet& sheet, const DielectricStack& stack, const Geometry& geometry,
                              Cavity mode, double delta_omega,
                              std::optional<FrequencyBracket> bracket = std::nullopt)
{
    const auto sol = solve_dispersion(stack, geometry, mode, bracket);
    const double omega21 = sheet.transition_freq(0.0);
    const auto d_eff = effective_dipole(sheet, stack, sol.omega);
    RateResult r;
    r.geometry = RateGeometry::Cavity;
    r.omega_used = sol.omega;
    r.g = sol.g;
    r.dipole = std::abs(d_eff);
    r.rate = cavity_rate_formula(d_eff, omega21, delta_omega, geometry, sol.g);
    return r;
}

/// A0 = 4 omega^3 |d|^2 sqrt(eps) / (3 hbar c^3).
inline double rate_free_space(std::complex<double> d, double omega, double eps)
{
    if (!(eps > 0.0)) {
        fail(ErrorKind::InvalidArgument, "free-space permittivity must be positive");
    }
    const double c3 = units::c_light * units::c_light * units::c_light;
    return 4.0 * omega * omega * omega * std::norm(d) * std::sqrt(eps) / (3.0 * units::hbar * c3);
}

struct PurcellResult
{
    /// (3 pi / 2) (c / omega sqrt(eps))^3 / V * (4 omega21 / delta_omega)
    double formula = 0.0;
    /// cavity rate over free-space rate, both from the sheet's dipoles
    double direct_quotient = 0.0;
};

inline double purcell_formula(const Geometry& geometry, double eps, double omega21, double delta_omega)
{
    const double l = units::c_light / (omega21 * std::sqrt(eps));
    return 1.5 * units::pi * l * l * l / geometry.volume() * (4.0 * omega21 / delta_omega);
}

/// Purcell ratio for a cavity filled with one nondispersive dielectric.
inline PurcellResult purcell_ratio(const EmitterSheet& sheet, const Geometry& geometry,
                                   const DielectricStack& stack, double omega21, double delta_omega)
{
    const auto eps = stack.uniform_constant_eps();
    if (!eps) {
        fail(ErrorKind::NonUniformStack, "Purcell ratio needs a uniform nondispersive filling");
    }
    if (!(delta_omega > 0.0)) {
        fail(ErrorKind::InvalidArgument, "cavity linewidth delta_omega must be positive");
    }
    PurcellResult p;
    p.formula = purcell_formula(geometry, *eps, omega21, delta_omega);
    const double cavity = cavity_rate_formula(effective_dipole(sheet, stack, omega21), omega21, delta_omega,
                                              geometry, stack.g_factor(omega21));
    p.direct_quotient = cavity / rate_free_space(bare_dipole(sheet), omega21, *eps);
    return p;
}

}  // namespace subcav
