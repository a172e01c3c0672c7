#pragma once

// Two-subband 2D emitter sheet centred at z = 0: envelope functions, the
// screened (effective) dipole of the optical transition, the transition
// dispersion, populations and dephasing on an isotropic radial k-grid, and
// reductions of k-sums to radial integrals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "subcav/detail/gauss_legendre.hpp"
#include "subcav/dielectric.hpp"
#include "subcav/error.hpp"
#include "subcav/modes.hpp"
#include "subcav/units.hpp"

namespace subcav {

/// Particle-in-a-box state n on [-width/2, width/2].
struct InfiniteWell
{
    int n;
    double width;
};

/// Envelope tabulated on a z-grid, linearly interpolated and zero outside.
struct SampledEnvelope
{
    std::vector<double> z;
    std::vector<double> values;
};

class Envelope
{
public:
    using Variant = std::variant<InfiniteWell, SampledEnvelope>;

    static Envelope infinite_well(int n, double width)
    {
        if (n < 1) {
            fail(ErrorKind::InvalidArgument, "infinite well level must be >= 1");
        }
        if (!(width > 0.0) || !std::isfinite(width)) {
            fail(ErrorKind::InvalidArgument, "well width must be positive");
        }
        return Envelope(InfiniteWell{n, width});
    }

    /// Tabulated envelope, renormalized so that the integral of psi^2 is one.
    static Envelope sampled(std::vector<double> z, std::vector<double> values)
    {
        if (z.size() < 2 || z.size() != values.size()) {
            fail(ErrorKind::InvalidArgument, "sampled envelope needs matching z and value arrays (>= 2 points)");
        }
        for (std::size_t i = 1; i < z.size(); ++i) {
            if (!(z[i] > z[i - 1])) {
                fail(ErrorKind::InvalidArgument, "sampled envelope grid must be strictly increasing");
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i + 1 < z.size(); ++i) {
            const double a = values[i];
            const double b = values[i + 1];
            norm += (z[i + 1] - z[i]) * (a * a + a * b + b * b) / 3.0;
        }
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            fail(ErrorKind::InvalidArgument, "sampled envelope has zero or non-finite norm");
        }
        const double scale = 1.0 / std::sqrt(norm);
        for (auto& v : values) {
            v *= scale;
        }
        return Envelope(SampledEnvelope{std::move(z), std::move(values)});
    }

    const Variant& variant() const noexcept { return psi_; }

    double lo() const noexcept
    {
        if (const auto* w = std::get_if<InfiniteWell>(&psi_)) {
            return -0.5 * w->width;
        }
        return std::get<SampledEnvelope>(psi_).z.front();
    }

    double hi() const noexcept
    {
        if (const auto* w = std::get_if<InfiniteWell>(&psi_)) {
            return 0.5 * w->width;
        }
        return std::get<SampledEnvelope>(psi_).z.back();
    }

    double operator()(double z) const noexcept
    {
        if (const auto* w = std::get_if<InfiniteWell>(&psi_)) {
            const double half = 0.5 * w->width;
            if (z < -half || z > half) {
                return 0.0;
            }
            return std::sqrt(2.0 / w->width) * std::sin(w->n * units::pi * (z + half) / w->width);
        }
        const auto& s = std::get<SampledEnvelope>(psi_);
        if (z < s.z.front() || z > s.z.back()) {
            return 0.0;
        }
        auto it = std::upper_bound(s.z.begin(), s.z.end(), z);
        if (it == s.z.end()) {
            return s.values.back();
        }
        const auto i = static_cast<std::size_t>(it - s.z.begin());
        const double t = (z - s.z[i - 1]) / (s.z[i] - s.z[i - 1]);
        return s.values[i - 1] + t * (s.values[i] - s.values[i - 1]);
    }

    /// Points where the envelope is not smooth (interpolation nodes).
    std::vector<double> kinks() const
    {
        if (const auto* s = std::get_if<SampledEnvelope>(&psi_)) {
            return s->z;
        }
        return {lo(), hi()};
    }

private:
    explicit Envelope(Variant psi) : psi_(std::move(psi)) {}

    Variant psi_;
};

struct Subband
{
    /// erg
    double edge_energy;
    /// g
    double effective_mass;
    Envelope psi;
};

/// Values available to k-sum integrands at one radial grid point.
struct KPoint
{
    std::size_t index;
    double k;
    double n1;
    double n2;
    double gamma21;
};

class EmitterSheet
{
public:
    EmitterSheet(Subband lower, Subband upper, std::vector<double> k_grid, std::vector<double> n1,
                 std::vector<double> n2, std::vector<double> gamma21, double degeneracy = 2.0)
        : lower_(std::move(lower)),
          upper_(std::move(upper)),
          k_(std::move(k_grid)),
          n1_(std::move(n1)),
          n2_(std::move(n2)),
          gamma21_(std::move(gamma21)),
          degeneracy_(degeneracy)
    {
        if (k_.size() < 16) {
            fail(ErrorKind::InvalidArgument, "radial k-grid needs at least 16 points");
        }
        if (n1_.size() != k_.size() || n2_.size() != k_.size() || gamma21_.size() != k_.size()) {
            fail(ErrorKind::InvalidArgument, "populations and dephasing must be sampled on the k-grid");
        }
        if (!(k_.front() >= 0.0)) {
            fail(ErrorKind::InvalidArgument, "radial k-grid must start at k >= 0");
        }
        for (std::size_t i = 0; i < k_.size(); ++i) {
            if (i > 0 && !(k_[i] > k_[i - 1])) {
                fail(ErrorKind::InvalidArgument, "radial k-grid must be strictly increasing");
            }
            if (!(n1_[i] >= 0.0 && n1_[i] <= 1.0) || !(n2_[i] >= 0.0 && n2_[i] <= 1.0)) {
                fail(ErrorKind::InvalidArgument, "occupations must lie in [0, 1]");
            }
            if (!(gamma21_[i] > 0.0) || !std::isfinite(gamma21_[i])) {
                fail(ErrorKind::InvalidArgument, "dephasing rate gamma21 must be positive");
            }
        }
        if (!(degeneracy_ > 0.0)) {
            fail(ErrorKind::InvalidArgument, "degeneracy must be positive");
        }
        if (!(lower_.effective_mass > 0.0) || !(upper_.effective_mass > 0.0)) {
            fail(ErrorKind::InvalidArgument, "effective masses must be positive");
        }
    }

    const Subband& lower() const noexcept { return lower_; }
    const Subband& upper() const noexcept { return upper_; }
    std::span<const double> k_grid() const noexcept { return k_; }
    std::span<const double> n1() const noexcept { return n1_; }
    std::span<const double> n2() const noexcept { return n2_; }
    std::span<const double> gamma21() const noexcept { return gamma21_; }
    double degeneracy() const noexcept { return degeneracy_; }

    KPoint point(std::size_t i) const noexcept { return {i, k_[i], n1_[i], n2_[i], gamma21_[i]}; }

    /// omega_21(k) = (W_2k - W_1k) / hbar for parabolic subbands.
    double transition_freq(double k) const
    {
        if (!(k >= 0.0)) {
            fail(ErrorKind::InvalidArgument, "k must be non-negative");
        }
        const double kinetic = 0.5 * units::hbar * units::hbar * k * k
                               * (1.0 / upper_.effective_mass - 1.0 / lower_.effective_mass);
        const double omega = (upper_.edge_energy - lower_.edge_energy + kinetic) / units::hbar;
        if (!(omega > 0.0)) {
            std::ostringstream msg;
            msg << "transition frequency is not positive at k=" << k << " 1/cm";
            fail(ErrorKind::NonPositiveFrequency, msg.str());
        }
        return omega;
    }

    /// Copy with the populations replaced; used by parameter scans.
    EmitterSheet with_populations(std::vector<double> n1, std::vector<double> n2) const
    {
        return EmitterSheet(lower_, upper_, k_, std::move(n1), std::move(n2), gamma21_, degeneracy_);
    }

private:
    Subband lower_;
    Subband upper_;
    std::vector<double> k_;
    std::vector<double> n1_;
    std::vector<double> n2_;
    std::vector<double> gamma21_;
    double degeneracy_;
};

inline double transition_freq(const EmitterSheet& sheet, double k)
{
    return sheet.transition_freq(k);
}

/// Weights w_i such that sum_k f(k) ~= sum_i w_i f(k_i): the isotropic
/// reduction degeneracy * S/(2 pi) * integral f(k) k dk, trapezoid rule.
inline std::vector<double> k_sum_weights(const EmitterSheet& sheet, const Geometry& geometry)
{
    const auto k = sheet.k_grid();
    const double prefactor = sheet.degeneracy() * geometry.area() / (2.0 * units::pi);
    std::vector<double> w(k.size(), 0.0);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        const double h = 0.5 * (k[i + 1] - k[i]);
        w[i] += prefactor * h * k[i];
        w[i + 1] += prefactor * h * k[i + 1];
    }
    return w;
}

/// sum over k of f(KPoint). The return type follows f (real or complex).
template <class F>
auto k_sum(const EmitterSheet& sheet, const Geometry& geometry, F&& f)
{
    using R = std::decay_t<decltype(f(sheet.point(0)))>;
    const auto w = k_sum_weights(sheet, geometry);
    R sum{};
    for (std::size_t i = 0; i < w.size(); ++i) {
        sum += w[i] * f(sheet.point(i));
    }
    return sum;
}

struct DipoleQuadrature
{
    std::size_t initial_nodes = 256;
    double rel_tol = 1e-9;
    int max_doublings = 12;
};

namespace detail {

/// Integral of psi_a(z) * weight(z) * psi_b(z) over [lo, hi], with panels
/// aligned to `breaks` so each panel integrand is smooth. Node count doubles
/// until the relative change drops below the tolerance.
template <class W>
double envelope_moment(const Envelope& psi_a, const Envelope& psi_b, W&& weight, double lo, double hi,
                       std::vector<double> breaks, const DipoleQuadrature& opts)
{
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> pts;
    for (double b : breaks) {
        if (b >= lo && b <= hi && (pts.empty() || b > pts.back())) {
            pts.push_back(b);
        }
    }
    const std::size_t segments = pts.size() - 1;
    const std::size_t per_panel = gauss_legendre_16().nodes.size();
    std::size_t panels = std::max<std::size_t>(1, (opts.initial_nodes + per_panel * segments - 1)
                                                      / (per_panel * segments));

    auto evaluate = [&](std::size_t p, double& abs_sum) {
        double sum = 0.0;
        abs_sum = 0.0;
        for (std::size_t s = 0; s < segments; ++s) {
            auto integrand = [&](double z) { return psi_a(z) * weight(z) * psi_b(z); };
            auto magnitude = [&](double z) { return std::abs(integrand(z)); };
            sum += integrate_panels(integrand, pts[s], pts[s + 1], p);
            abs_sum += integrate_panels(magnitude, pts[s], pts[s + 1], p);
        }
        return sum;
    };

    double scale = 0.0;
    double previous = evaluate(panels, scale);
    for (int d = 0; d < opts.max_doublings; ++d) {
        panels *= 2;
        double abs_sum = 0.0;
        const double current = evaluate(panels, abs_sum);
        const double change = std::abs(current - previous);
        if (change <= opts.rel_tol * std::abs(current) || change <= 1e-14 * abs_sum) {
            return current;
        }
        previous = current;
    }
    fail(ErrorKind::QuadratureNotConverged, "envelope integral did not converge");
}

}  // namespace detail

/// Effective dipole d~_nm = -e * integral psi_n(z) [integral_{lo}^{z} dz'/eps(omega, z')] psi_m(z) dz.
inline std::complex<double> effective_dipole(const Envelope& psi_n, const Envelope& psi_m,
                                             const DielectricStack& stack, double omega,
                                             const DipoleQuadrature& opts = {})
{
    const double lo = std::min(psi_n.lo(), psi_m.lo());
    const double hi = std::max(psi_n.hi(), psi_m.hi());
    const double half = 0.5 * stack.thickness();
    if (lo < -half * (1.0 + 1e-12) || hi > half * (1.0 + 1e-12)) {
        fail(ErrorKind::OutOfDomain, "emitter envelopes do not fit inside the dielectric stack");
    }
    if (!stack.transparent_at(omega)) {
        stack.inv_eps_integral(omega);
    }
    std::vector<double> breaks = psi_n.kinks();
    const auto km = psi_m.kinks();
    breaks.insert(breaks.end(), km.begin(), km.end());
    for (const auto& layer : stack.layers()) {
        breaks.push_back(layer.z_lo);
    }
    auto inner = [&](double z) { return stack.inv_eps_integral(omega, lo, std::clamp(z, lo, hi)); };
    const double moment = detail::envelope_moment(psi_n, psi_m, inner, lo, hi, std::move(breaks), opts);
    return {-units::e_charge * moment, 0.0};
}

/// d~_21 of the sheet at frequency omega.
inline std::complex<double> effective_dipole(const EmitterSheet& sheet, const DielectricStack& stack,
                                             double omega, const DipoleQuadrature& opts = {})
{
    return effective_dipole(sheet.upper().psi, sheet.lower().psi, stack, omega, opts);
}

/// Unscreened dipole d_21 = -e <2|z|1>.
inline std::complex<double> bare_dipole(const EmitterSheet& sheet, const DipoleQuadrature& opts = {})
{
    const auto& a = sheet.upper().psi;
    const auto& b = sheet.lower().psi;
    const double lo = std::min(a.lo(), b.lo());
    const double hi = std::max(a.hi(), b.hi());
    std::vector<double> breaks = a.kinks();
    const auto kb = b.kinks();
    breaks.insert(breaks.end(), kb.begin(), kb.end());
    auto position = [](double z) { return z; };
    return {-units::e_charge * detail::envelope_moment(a, b, position, lo, hi, std::move(breaks), opts), 0.0};
}

/// Overlap integral of two envelopes.
inline double envelope_overlap(const Envelope& a, const Envelope& b)
{
    const double lo = std::min(a.lo(), b.lo());
    const double hi = std::max(a.hi(), b.hi());
    std::vector<double> breaks = a.kinks();
    const auto kb = b.kinks();
    breaks.insert(breaks.end(), kb.begin(), kb.end());
    auto one = [](double) { return 1.0; };
    return detail::envelope_moment(a, b, one, lo, hi, std::move(breaks), {});
}

/// Fermi-Dirac occupation of parabolic subband states. Energies and
/// temperature in erg; temperature zero gives a step.
inline std::vector<double> fermi_occupation(const Subband& band, std::span<const double> k_grid,
                                            double chemical_potential, double temperature)
{
    if (!(temperature >= 0.0)) {
        fail(ErrorKind::InvalidArgument, "temperature must be non-negative");
    }
    std::vector<double> n(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const double k = k_grid[i];
        const double energy = band.edge_energy
                              + 0.5 * units::hbar * units::hbar * k * k / band.effective_mass;
        const double de = energy - chemical_potential;
        if (temperature == 0.0) {
            n[i] = de < 0.0 ? 1.0 : (de == 0.0 ? 0.5 : 0.0);
        } else {
            const double x = de / temperature;
            n[i] = x > 0.0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
        }
    }
    return n;
}

}  // namespace subcav
