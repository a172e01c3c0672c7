#pragma once

// Analytic steady state of the linearized Heisenberg-Langevin equations for a
// single cavity mode driven by a k-resolved two-subband ensemble: medium
// response, photon number, outcoupled power, effective linewidth and the two
// limiting forms of the power.

#include <cmath>
#include <complex>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "subcav/dielectric.hpp"
#include "subcav/emitter.hpp"
#include "subcav/error.hpp"
#include "subcav/golden_rule.hpp"
#include "subcav/modes.hpp"
#include "subcav/units.hpp"

namespace subcav {

struct LangevinParams
{
    /// radiative / diffraction loss of the field amplitude, rad/s
    double gamma_r = 0.0;
    /// Ohmic loss, rad/s
    double gamma_sigma = 0.0;
    /// reservoir temperatures, erg (k_B T)
    double T_r = 0.0;
    double T_sigma = 0.0;

    void validate() const
    {
        if (!(gamma_r >= 0.0) || !(gamma_sigma >= 0.0) || !std::isfinite(gamma_r) || !std::isfinite(gamma_sigma)) {
            fail(ErrorKind::InvalidArgument, "cavity loss rates must be finite and non-negative");
        }
        if (!(T_r >= 0.0) || !(T_sigma >= 0.0)) {
            fail(ErrorKind::InvalidArgument, "reservoir temperatures must be non-negative");
        }
    }
};

/// One k-bin of the emitter ensemble: its k-sum weight and line parameters.
struct EnsemblePoint
{
    double weight;
    double n1;
    double n2;
    double gamma21;
    double omega21;
};

inline std::vector<EnsemblePoint> spectral_ensemble(const EmitterSheet& sheet, const Geometry& geometry)
{
    const auto w = k_sum_weights(sheet, geometry);
    std::vector<EnsemblePoint> out;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto p = sheet.point(i);
        out.push_back({w[i], p.n1, p.n2, p.gamma21, sheet.transition_freq(p.k)});
    }
    return out;
}

struct MediumResponse
{
    /// frequency shift of the cold cavity mode, rad/s
    double delta_omega = 0.0;
    /// field damping by the electrons, rad/s; negative under inversion
    double gamma = 0.0;
    bool inverted = false;
};

/// With S = sum_k (n1 - n2) / ((omega21 - omega_nu) - i gamma21), the field
/// equation gets gamma + i delta_omega = -i Omega^2 S, so gamma = Omega^2 Im S
/// and delta_omega = -Omega^2 Re S (a mode below an absorbing line is pushed down).
inline MediumResponse medium_response(std::span<const EnsemblePoint> ensemble, double rabi2, double omega_nu)
{
    std::complex<double> sum{};
    for (const auto& p : ensemble) {
        sum += p.weight * (p.n1 - p.n2) / std::complex<double>(p.omega21 - omega_nu, -p.gamma21);
    }
    MediumResponse r;
    r.delta_omega = -rabi2 * sum.real();
    r.gamma = rabi2 * sum.imag();
    r.inverted = r.gamma < 0.0;
    return r;
}

inline MediumResponse medium_response(const EmitterSheet& sheet, const Geometry& geometry, double rabi2,
                                      double omega_nu)
{
    return medium_response(spectral_ensemble(sheet, geometry), rabi2, omega_nu);
}

/// integral d omega / pi of 1 / ([(omega - x)^2 + a^2][(omega - y)^2 + b^2]),
/// with detuning = x - y.
inline double lorentz_product_integral(double a, double b, double detuning)
{
    const double s = a + b;
    return s / (a * b * (detuning * detuning + s * s));
}

/// Bose occupation 1 / (exp(hbar omega / T) - 1); zero at T = 0.
inline double thermal_occupation(double omega, double temperature)
{
    if (temperature <= 0.0) {
        return 0.0;
    }
    return 1.0 / std::expm1(units::hbar * omega / temperature);
}

inline double total_field_decay(const LangevinParams& params, double gamma_medium)
{
    const double gt = params.gamma_r + params.gamma_sigma + gamma_medium;
    if (!(gt > 0.0)) {
        std::ostringstream msg;
        msg << "total field decay Gamma_r + Gamma_sigma + gamma = " << gt << " rad/s is not positive";
        fail(ErrorKind::Unstable, msg.str());
    }
    return gt;
}

struct PhotonNumber
{
    /// emitter-driven part
    double spontaneous = 0.0;
    /// Gamma_r nTr / Gamma_t + Gamma_sigma nTsigma / Gamma_t
    double thermal = 0.0;
    double total = 0.0;
    /// per-bin contributions to `spontaneous`
    std::vector<double> per_bin;
};

inline PhotonNumber photon_number(std::span<const EnsemblePoint> ensemble, double rabi2, double omega_nu,
                                  const LangevinParams& params)
{
    params.validate();
    const auto medium = medium_response(ensemble, rabi2, omega_nu);
    const double gt = total_field_decay(params, medium.gamma);
    PhotonNumber n;
    n.per_bin.reserve(ensemble.size());
    for (const auto& p : ensemble) {
        const double term = rabi2 * p.weight * p.gamma21 * p.n2
                            * lorentz_product_integral(gt, p.gamma21, omega_nu - p.omega21);
        n.per_bin.push_back(term);
        n.spontaneous += term;
    }
    n.thermal = (params.gamma_r * thermal_occupation(omega_nu, params.T_r)
                 + params.gamma_sigma * thermal_occupation(omega_nu, params.T_sigma))
                / gt;
    n.total = n.spontaneous + n.thermal;
    return n;
}

/// P = 2 Gamma_r hbar omega_nu <c+c>, thermal background excluded.
inline double emitted_power(std::span<const EnsemblePoint> ensemble, double rabi2, double omega_nu,
                            const LangevinParams& params)
{
    const auto n = photon_number(ensemble, rabi2, omega_nu, params);
    return 2.0 * params.gamma_r * units::hbar * omega_nu * n.spontaneous;
}

/// Delta omega_eff from 1/Delta omega_eff = integral d omega / 4 pi of the
/// normalized two-Lorentzian overlap, closed form at any detuning.
inline double effective_linewidth(double gamma21, double omega21, double omega_nu, const LangevinParams& params,
                                  double gamma_medium = 0.0)
{
    params.validate();
    if (!(gamma21 > 0.0)) {
        fail(ErrorKind::InvalidArgument, "gamma21 must be positive");
    }
    const double gt = total_field_decay(params, gamma_medium);
    const double inv = 0.5 * params.gamma_r * gamma21 * lorentz_product_integral(gt, gamma21, omega_nu - omega21);
    return 1.0 / inv;
}

inline double q_eff(double gamma21, double omega21, double omega_nu, const LangevinParams& params,
                    double gamma_medium = 0.0)
{
    return omega21 / effective_linewidth(gamma21, omega21, omega_nu, params, gamma_medium);
}

/// Q_eff normalized by the transition Q, 2 gamma21 / Delta omega_eff.
inline double q_norm(double gamma21, double omega21, double omega_nu, const LangevinParams& params,
                     double gamma_medium = 0.0)
{
    return 2.0 * gamma21 / effective_linewidth(gamma21, omega21, omega_nu, params, gamma_medium);
}

/// Gamma_r that maximizes Q_eff at resonance for fixed g = Gamma_sigma + gamma.
inline double optimal_gamma_r(double g, double gamma21)
{
    return std::sqrt(g * (g + gamma21));
}

/// Cavity rate with linewidth delta_omega written through Omega^2:
/// A(delta_omega) = (Omega^2 / omega_nu)(4 omega21 / delta_omega).
inline double cavity_rate_from_rabi(double rabi2, double omega_nu, double omega21, double delta_omega)
{
    return rabi2 / omega_nu * (4.0 * omega21 / delta_omega);
}

enum class LineRegime { Narrow, Intermediate, Wide };

inline std::string to_string(LineRegime r)
{
    switch (r) {
    case LineRegime::Narrow: return "narrow";
    case LineRegime::Intermediate: return "intermediate";
    case LineRegime::Wide: return "wide";
    }
    return "unknown";
}

struct LimitPowers
{
    /// transition line much narrower than the cavity line, erg/s
    double narrow = 0.0;
    /// transition line much wider than the cavity line, erg/s
    double wide = 0.0;
    /// Gamma_t / <gamma21>
    double ratio = 0.0;
    double mean_gamma21 = 0.0;
    LineRegime regime = LineRegime::Intermediate;
};

/// Both limiting forms of the power, evaluated whatever the regime. <gamma21>
/// is the n2-weighted mean over the ensemble.
inline LimitPowers limit_powers(std::span<const EnsemblePoint> ensemble, double rabi2, double omega_nu,
                                const LangevinParams& params)
{
    params.validate();
    const auto medium = medium_response(ensemble, rabi2, omega_nu);
    const double gt = total_field_decay(params, medium.gamma);
    const double escape = params.gamma_r / gt;

    double n2_sum = 0.0;
    double gamma_sum = 0.0;
    for (const auto& p : ensemble) {
        n2_sum += p.weight * p.n2;
        gamma_sum += p.weight * p.n2 * p.gamma21;
    }
    LimitPowers out;
    if (n2_sum <= 0.0) {
        double w = 0.0;
        for (const auto& p : ensemble) {
            w += p.weight;
            gamma_sum += p.weight * p.gamma21;
        }
        out.mean_gamma21 = gamma_sum / w;
    } else {
        out.mean_gamma21 = gamma_sum / n2_sum;
    }
    const double mg = out.mean_gamma21;
    for (const auto& p : ensemble) {
        const double det = omega_nu - p.omega21;
        const double a_narrow = cavity_rate_from_rabi(rabi2, omega_nu, p.omega21, 2.0 * gt);
        out.narrow += a_narrow * escape * gt * gt / (det * det + gt * gt) * p.weight * p.n2;
        const double a_wide = cavity_rate_from_rabi(rabi2, omega_nu, p.omega21, 2.0 * mg);
        out.wide += a_wide * escape * mg * p.gamma21 * p.n2 * p.weight / (det * det + p.gamma21 * p.gamma21);
    }
    const double energy = units::hbar * omega_nu;
    out.narrow *= energy;
    out.wide *= energy;
    out.ratio = gt / mg;
    out.regime = out.ratio >= 10.0 ? LineRegime::Narrow : (out.ratio <= 0.1 ? LineRegime::Wide : LineRegime::Intermediate);
    return out;
}

struct SpectralResult
{
    /// cavity frequency used for the response (shifted if the shift was absorbed), rad/s
    double omega_nu = 0.0;
    double delta_omega_shift = 0.0;
    double gamma_medium = 0.0;
    bool inverted = false;
    double gamma_total = 0.0;
    double photon_number = 0.0;
    double thermal_photons = 0.0;
    /// erg/s
    double power = 0.0;
    /// n2-weighted effective linewidth, rad/s
    double delta_omega_eff = 0.0;
    double q_eff = 0.0;
    double limit_narrow = 0.0;
    double limit_wide = 0.0;
    LineRegime regime = LineRegime::Intermediate;
    /// sum_k n2k
    double n2_total = 0.0;
    /// n2-weighted transition frequency, rad/s
    double omega21_mean = 0.0;
};

/// Full steady state for an ensemble coupled with Omega^2 = rabi2. With
/// absorb_shift the medium frequency shift is folded into the cavity mode
/// frequency before the photon number is evaluated.
inline SpectralResult steady_state(std::span<const EnsemblePoint> ensemble, double rabi2, double omega_nu,
                                   const LangevinParams& params, bool absorb_shift = false)
{
    params.validate();
    SpectralResult r;
    const auto cold = medium_response(ensemble, rabi2, omega_nu);
    r.delta_omega_shift = cold.delta_omega;
    r.omega_nu = absorb_shift ? omega_nu + cold.delta_omega : omega_nu;
    const auto medium = absorb_shift ? medium_response(ensemble, rabi2, r.omega_nu) : cold;
    r.gamma_medium = medium.gamma;
    r.inverted = medium.inverted;
    r.gamma_total = total_field_decay(params, medium.gamma);

    const auto n = photon_number(ensemble, rabi2, r.omega_nu, params);
    r.photon_number = n.total;
    r.thermal_photons = n.thermal;
    r.power = 2.0 * params.gamma_r * units::hbar * r.omega_nu * n.spontaneous;

    double inv_weighted = 0.0;
    double omega_weighted = 0.0;
    for (const auto& p : ensemble) {
        const double w = p.weight * p.n2;
        r.n2_total += w;
        omega_weighted += w * p.omega21;
        inv_weighted += w * 0.5 * params.gamma_r * p.gamma21
                        * lorentz_product_integral(r.gamma_total, p.gamma21, r.omega_nu - p.omega21);
    }
    if (r.n2_total > 0.0) {
        r.omega21_mean = omega_weighted / r.n2_total;
        r.delta_omega_eff = r.n2_total / inv_weighted;
        r.q_eff = r.omega21_mean / r.delta_omega_eff;
    }
    const auto limits = limit_powers(ensemble, rabi2, r.omega_nu, params);
    r.limit_narrow = limits.narrow;
    r.limit_wide = limits.wide;
    r.regime = limits.regime;
    return r;
}

struct FreeSpaceBreakdown
{
    /// hbar omega A0 sum n2, erg/s
    double free_space_power = 0.0;
    /// (6 / pi^2)(lambda / 2 sqrt(eps))^3 / (Lx Ly Lz)
    double geometric_factor = 0.0;
    double q_eff = 0.0;
    double product = 0.0;
};

/// Geometric enhancement of a subwavelength cavity with wavelength lambda in vacuum.
inline double geometric_factor(double lambda, double eps, const Geometry& geometry)
{
    const double half = lambda / (2.0 * std::sqrt(eps));
    return 6.0 / (units::pi * units::pi) * half * half * half / geometry.volume();
}

/// Power as free-space emission x geometric factor x Q_eff, for a cavity filled
/// with a uniform nondispersive medium. All frequencies are omega_nu.
inline FreeSpaceBreakdown power_free_space_reference(const EmitterSheet& sheet, const Geometry& geometry,
                                                     const DielectricStack& stack, double omega_nu,
                                                     const LangevinParams& params)
{
    const auto eps = stack.uniform_constant_eps();
    if (!eps) {
        fail(ErrorKind::NonUniformStack, "free-space breakdown needs a uniform nondispersive filling");
    }
    const auto ensemble = spectral_ensemble(sheet, geometry);
    const double rabi2 = rabi_squared(effective_dipole(sheet, stack, omega_nu), stack, geometry, omega_nu);
    const auto ss = steady_state(ensemble, rabi2, omega_nu, params);

    FreeSpaceBreakdown b;
    b.free_space_power = units::hbar * omega_nu * rate_free_space(bare_dipole(sheet), omega_nu, *eps) * ss.n2_total;
    b.geometric_factor = geometric_factor(2.0 * units::pi * units::c_light / omega_nu, *eps, geometry);
    b.q_eff = ss.q_eff;
    b.product = b.free_space_power * b.geometric_factor * b.q_eff;
    return b;
}

}  // namespace subcav
