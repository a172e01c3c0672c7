#pragma once

// Exact interaction matrix elements between electron plane-wave states for the
// waveguide and cavity mode profiles, and the direct-transition weights the
// rest of the pipeline uses.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include "subcav/detail/gauss_legendre.hpp"
#include "subcav/error.hpp"
#include "subcav/modes.hpp"
#include "subcav/units.hpp"

namespace subcav {

namespace detail {

/// sin(a L / 2) / (a L), with the removable singularity at a = 0 expanded.
inline double half_sinc(double a, double length)
{
    const double u = a * length;
    if (std::abs(u) < 1e-8) {
        const double u2 = u * u;
        return 0.5 - u2 / 48.0 + u2 * u2 / 3840.0;
    }
    return std::sin(0.5 * u) / u;
}

}  // namespace detail

/// Y_{ky', ky}: overlap of cos(pi y / Ly) between two plane waves across the strip.
inline double y_factor(double ky, double ky_prime, double ly)
{
    const double p = units::pi / ly;
    return detail::half_sinc(ky + p - ky_prime, ly) + detail::half_sinc(ky_prime + p - ky, ly);
}

/// X_{kx', kx} for the N-th cavity profile; odd N uses cos, even N uses sin.
inline std::complex<double> x_factor(double kx, double kx_prime, double lx, int n)
{
    if (n < 1) {
        fail(ErrorKind::InvalidArgument, "cavity mode index N must be >= 1");
    }
    const double p = n * units::pi / lx;
    if (n % 2 != 0) {
        return {detail::half_sinc(kx + p - kx_prime, lx) + detail::half_sinc(kx_prime + p - kx, lx), 0.0};
    }
    return {0.0, detail::half_sinc(kx_prime + p - kx, lx) - detail::half_sinc(kx + p - kx_prime, lx)};
}

struct WaveVector
{
    double x;
    double y;
};

/// zeta^{(nu)}_{k'k}. Plane-wave and waveguide momentum deltas along free
/// directions are resolved with the given tolerance (1/cm).
inline std::complex<double> matrix_element(const ModeIndex& mode, const Geometry& geometry, WaveVector k,
                                           WaveVector k_prime, double delta_tol = 1e-9)
{
    auto delta = [&](double a, double b) {
        return std::abs(a - b) <= delta_tol * std::max({1.0, std::abs(a), std::abs(b)}) ? 1.0 : 0.0;
    };
    if (const auto* pw = std::get_if<PlaneWave>(&mode)) {
        return delta(k_prime.x, k.x + pw->qx) * delta(k_prime.y, k.y + pw->qy);
    }
    const double y = y_factor(k.y, k_prime.y, geometry.Ly);
    if (const auto* wg = std::get_if<Waveguide>(&mode)) {
        return delta(k_prime.x, k.x + wg->qx) * y;
    }
    const auto& cav = std::get<Cavity>(mode);
    return y * x_factor(k.x, k_prime.x, geometry.Lx, cav.N);
}

/// Matrix elements on a k-grid x k'-grid, row-major with rows over k'.
struct MatrixElementTable
{
    ModeIndex mode;
    std::vector<WaveVector> k;
    std::vector<WaveVector> k_prime;
    std::vector<std::complex<double>> values;

    std::complex<double> at(std::size_t i_prime, std::size_t i) const { return values[i_prime * k.size() + i]; }
};

inline MatrixElementTable make_matrix_table(const ModeIndex& mode, const Geometry& geometry,
                                            std::vector<WaveVector> k, std::vector<WaveVector> k_prime)
{
    MatrixElementTable table{mode, std::move(k), std::move(k_prime), {}};
    table.values.reserve(table.k.size() * table.k_prime.size());
    for (const auto& kp : table.k_prime) {
        for (const auto& kk : table.k) {
            table.values.push_back(matrix_element(mode, geometry, kk, kp));
        }
    }
    return table;
}

namespace detail {

/// (L / 2 pi) * integral |f(k')|^2 dk' over a window of `lobes` sinc lobes on
/// each side of the two peaks at k -/+ P (the window ends are zeros). Every lobe is one Gauss-Legendre
/// panel bounded by common zeros of both terms, at k + P + 2 pi m / L.
template <class F>
double parseval_integral(F&& factor_sq, double k, double length, double peak_offset, int lobes)
{
    if (lobes < 40) {
        fail(ErrorKind::WindowTooNarrow, "Parseval window must cover at least 40 lobes on each side");
    }
    const double lobe = 2.0 * units::pi / length;
    const double start = k - peak_offset - lobes * lobe;
    const int panels = 2 * lobes + static_cast<int>(std::lround(2.0 * peak_offset / lobe));
    double sum = 0.0;
    for (int j = 0; j < panels; ++j) {
        const double lo = start + j * lobe;
        sum += integrate_panels(factor_sq, lo, lo + lobe, 1);
    }
    return length / (2.0 * units::pi) * sum;
}

}  // namespace detail

inline double parseval_y(double ky, double ly, int lobes = 400)
{
    auto f = [&](double kp) {
        const double y = y_factor(ky, kp, ly);
        return y * y;
    };
    return detail::parseval_integral(f, ky, ly, units::pi / ly, lobes);
}

inline double parseval_x(double kx, double lx, int n, int lobes = 400)
{
    auto f = [&](double kp) { return std::norm(x_factor(kx, kp, lx, n)); };
    return detail::parseval_integral(f, kx, lx, n * units::pi / lx, lobes);
}

struct ParsevalSums
{
    /// 1 when the direction carries a momentum delta
    double y = 1.0;
    double x = 1.0;
    double value = 1.0;
};

/// Sum over k' of zeta_{k'k} zeta^dagger_{kk'}, evaluated as integrals over k'.
inline ParsevalSums parseval_sum(const ModeIndex& mode, const Geometry& geometry, WaveVector k,
                                 int lobes = 400)
{
    ParsevalSums sums;
    if (std::holds_alternative<PlaneWave>(mode)) {
        return sums;
    }
    sums.y = parseval_y(k.y, geometry.Ly, lobes);
    if (const auto* cav = std::get_if<Cavity>(&mode)) {
        sums.x = parseval_x(k.x, geometry.Lx, cav->N, lobes);
    }
    sums.value = sums.x * sums.y;
    return sums;
}

/// Direct-transition weight alpha_nu = sqrt(S^-1 integral |zeta|^2).
inline double alpha(const ModeIndex& mode, const Geometry& geometry)
{
    return std::sqrt(zeta_norm_integral(mode, geometry) / geometry.area());
}

}  // namespace subcav
