#pragma once

// Quasi-TEM modes of the strip line (plane waves between two metal planes),
// the side-coated waveguide, and the rectangular cavity: lateral profiles,
// dispersion, and the quantization normalization of the z-independent
// electric-induction amplitude.

#include <cmath>
#include <complex>
#include <optional>
#include <variant>

#include "subcav/detail/roots.hpp"
#include "subcav/dielectric.hpp"
#include "subcav/error.hpp"
#include "subcav/units.hpp"

namespace subcav {

struct Geometry
{
    double Lx;
    double Ly;
    double Lz;

    double area() const noexcept { return Lx * Ly; }
    double volume() const noexcept { return Lx * Ly * Lz; }
};

/// Geometry with Lz taken from the stack.
inline Geometry make_geometry(double lx, double ly, const DielectricStack& stack)
{
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
        fail(ErrorKind::InvalidArgument, "lateral dimensions must be finite and positive");
    }
    return Geometry{lx, ly, stack.thickness()};
}

struct PlaneWave
{
    double qx;
    double qy;
};

struct Waveguide
{
    double qx;
};

struct Cavity
{
    int N;

    bool odd() const noexcept { return N % 2 != 0; }
};

using ModeIndex = std::variant<PlaneWave, Waveguide, Cavity>;

struct FrequencyBracket
{
    double lo;
    double hi;
};

struct ModeSolution
{
    double omega = 0.0;
    ModeIndex mode = PlaneWave{0.0, 0.0};
    /// |D_nu|^2 in erg/cm^3
    double d2 = 0.0;
    /// G(Lz, omega) in cm
    double g = 0.0;
    /// integral of |zeta|^2 over the lateral area, cm^2
    double zeta_norm = 0.0;
    /// Lz * omega * sqrt(mean eps) / c exceeded 0.3
    bool subwavelength_strained = false;
    int iterations = 0;
};

namespace detail {

inline void check_mode(const ModeIndex& mode)
{
    if (const auto* c = std::get_if<Cavity>(&mode); c != nullptr && c->N < 1) {
        fail(ErrorKind::InvalidArgument, "cavity mode index N must be >= 1");
    }
}

inline bool within(double value, double half)
{
    return std::abs(value) <= half * (1.0 + 1e-12);
}

}  // namespace detail

/// Squared lateral wavenumber K^2 that the dispersion relation balances.
inline double transverse_wavenumber_sq(const ModeIndex& mode, const Geometry& geometry)
{
    detail::check_mode(mode);
    const double py = units::pi / geometry.Ly;
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PlaneWave>) {
                return m.qx * m.qx + m.qy * m.qy;
            } else if constexpr (std::is_same_v<T, Waveguide>) {
                return m.qx * m.qx + py * py;
            } else {
                const double px = m.N * units::pi / geometry.Lx;
                return px * px + py * py;
            }
        },
        mode);
}

inline std::complex<double> zeta(const ModeIndex& mode, const Geometry& geometry, double x, double y)
{
    detail::check_mode(mode);
    using namespace std::complex_literals;
    return std::visit(
        [&](const auto& m) -> std::complex<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PlaneWave>) {
                return std::exp(1i * (m.qx * x + m.qy * y));
            } else {
                if (!detail::within(y, 0.5 * geometry.Ly)) {
                    fail(ErrorKind::OutOfDomain, "y outside the waveguide cross-section");
                }
                const double ycos = std::cos(units::pi * y / geometry.Ly);
                if constexpr (std::is_same_v<T, Waveguide>) {
                    return ycos * std::exp(1i * (m.qx * x));
                } else {
                    if (!detail::within(x, 0.5 * geometry.Lx)) {
                        fail(ErrorKind::OutOfDomain, "x outside the cavity");
                    }
                    const double arg = m.N * units::pi * x / geometry.Lx;
                    return ycos * (m.odd() ? std::cos(arg) : std::sin(arg));
                }
            }
        },
        mode);
}

/// Integral of zeta zeta* over the lateral area: S, S/2 or S/4.
inline double zeta_norm_integral(const ModeIndex& mode, const Geometry& geometry)
{
    const double s = geometry.area();
    if (std::holds_alternative<PlaneWave>(mode)) {
        return s;
    }
    if (std::holds_alternative<Waveguide>(mode)) {
        return 0.5 * s;
    }
    return 0.25 * s;
}

/// Relative residual of omega^2/(K^2 c^2) = (1/Lz) integral dz/eps.
inline double dispersion_residual(const DielectricStack& stack, const Geometry& geometry,
                                  const ModeIndex& mode, double omega)
{
    const double k2 = transverse_wavenumber_sq(mode, geometry);
    const double lhs = omega * omega / (k2 * units::c_light * units::c_light);
    const double rhs = stack.inv_eps_integral(omega) / stack.thickness();
    return (lhs - rhs) / lhs;
}

inline double normalization_d2(const DielectricStack& stack, const Geometry& geometry,
                               const ModeIndex& mode, double omega)
{
    return 2.0 * units::pi * units::hbar * omega
           / (zeta_norm_integral(mode, geometry) * stack.g_factor(omega));
}

/// Root of the dispersion relation inside a bracket that lies in one
/// transparency window. A 64-point scan guards against multiple roots.
inline detail::RootResult solve_frequency_bracketed(const DielectricStack& stack,
                                                    const Geometry& geometry,
                                                    const ModeIndex& mode,
                                                    FrequencyBracket bracket)
{
    if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo)) {
        fail(ErrorKind::InvalidArgument, "frequency bracket must satisfy 0 < lo < hi");
    }
    const double k2 = transverse_wavenumber_sq(mode, geometry);
    if (!(k2 > 0.0)) {
        fail(ErrorKind::InvalidArgument, "mode has zero lateral wavenumber");
    }
    const double kc2 = k2 * units::c_light * units::c_light;
    const double lz = stack.thickness();
    auto residual = [&](double omega) {
        return omega * omega / kc2 - stack.inv_eps_integral(omega) / lz;
    };

    const auto sub = detail::isolate_single_root(residual, bracket.lo, bracket.hi, 64);
    return detail::find_root(residual, sub.first, sub.second, 1e-12, 200);
}

inline ModeSolution make_mode_solution(const DielectricStack& stack, const Geometry& geometry,
                                       const ModeIndex& mode, double omega, int iterations = 0)
{
    ModeSolution sol;
    sol.omega = omega;
    sol.mode = mode;
    sol.g = stack.g_factor(omega);
    sol.zeta_norm = zeta_norm_integral(mode, geometry);
    sol.d2 = 2.0 * units::pi * units::hbar * omega / (sol.zeta_norm * sol.g);
    sol.subwavelength_strained
        = geometry.Lz * omega * std::sqrt(stack.mean_eps(omega)) / units::c_light > 0.3;
    sol.iterations = iterations;
    return sol;
}

/// Mode frequency and cached normalization. Nondispersive stacks use the closed
/// form; dispersive stacks require a bracket.
inline ModeSolution solve_dispersion(const DielectricStack& stack, const Geometry& geometry,
                                     const ModeIndex& mode,
                                     std::optional<FrequencyBracket> bracket = std::nullopt)
{
    const double k2 = transverse_wavenumber_sq(mode, geometry);
    if (!(k2 > 0.0)) {
        fail(ErrorKind::InvalidArgument, "mode has zero lateral wavenumber");
    }
    if (!stack.is_dispersive()) {
        // any positive frequency gives the same integral for constant layers
        const double inv = stack.inv_eps_integral(1.0);
        const double omega = std::sqrt(k2) * units::c_light * std::sqrt(inv / stack.thickness());
        return make_mode_solution(stack, geometry, mode, omega);
    }
    if (!bracket) {
        fail(ErrorKind::InvalidArgument, "dispersive stack requires a frequency bracket");
    }
    const auto root = solve_frequency_bracketed(stack, geometry, mode, *bracket);
    return make_mode_solution(stack, geometry, mode, root.root, root.iterations);
}

/// Squared vacuum Rabi frequency |d_eff|^2 |D~|^2 / hbar^2 with
/// |D~|^2 = 2 pi hbar omega / (S G).
inline double rabi_squared(std::complex<double> d_eff, const DielectricStack& stack,
                           const Geometry& geometry, double omega)
{
    return std::norm(d_eff) * 2.0 * units::pi * omega
           / (units::hbar * geometry.area() * stack.g_factor(omega));
}

inline double rabi_squared(std::complex<double> d_eff, const ModeSolution& solution,
                           const Geometry& geometry)
{
    return std::norm(d_eff) * 2.0 * units::pi * solution.omega
           / (units::hbar * geometry.area() * solution.g);
}

}  // namespace subcav
