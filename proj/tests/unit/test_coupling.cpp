#include <gtest/gtest.h>

#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "test_support.hpp"

using namespace subcav;
using subcav::testing::rel_err;

namespace {

using boost::math::quadrature::gauss_kronrod;

/// (1/L) integral over the cross-section of exp(i (k - k') s) profile(s) ds.
template <class P>
std::complex<double> overlap_quadrature(double k, double kp, double length, P&& profile)
{
    const double a = k - kp;
    auto re = [&](double s) { return std::cos(a * s) * profile(s); };
    auto im = [&](double s) { return std::sin(a * s) * profile(s); };
    const double h = 0.5 * length;
    return {gauss_kronrod<double, 61>::integrate(re, -h, h, 8, 1e-12) / length,
            gauss_kronrod<double, 61>::integrate(im, -h, h, 8, 1e-12) / length};
}

const Geometry kGeom{units::um(3.0), units::um(2.0), units::nm(100.0)};

}  // namespace

TEST(Coupling, HalfSincSeriesIsContinuous)
{
    const double l = 1e-4;
    EXPECT_DOUBLE_EQ(detail::half_sinc(0.0, l), 0.5);
    for (double u : {2e-9, 9.9e-9, 1.01e-8, 1e-7, 1e-3}) {
        EXPECT_NEAR(detail::half_sinc(u / l, l), std::sin(0.5 * u) / u, 1e-15) << u;
    }
}

TEST(Coupling, YFactorOnPeakIsHalf)
{
    const double ly = kGeom.Ly;
    const double p = units::pi / ly;
    const double ky = 1.7e4;
    EXPECT_NEAR(y_factor(ky, ky + p, ly), 0.5, 1e-15);
    EXPECT_NEAR(y_factor(ky, ky - p, ly), 0.5, 1e-15);
}

TEST(Coupling, XFactorOddOnPeak)
{
    const double lx = kGeom.Lx;
    const double kx = -2.3e4;
    for (int n : {1, 3, 5}) {
        const double p = n * units::pi / lx;
        const auto x = x_factor(kx, kx + p, lx, n);
        const auto q = overlap_quadrature(kx, kx + p, lx, [&](double s) { return std::cos(p * s); });
        EXPECT_NEAR(x.real(), 0.5, 1e-15);
        EXPECT_LT(std::abs(x - q), 1e-10);
    }
}

TEST(Coupling, XFactorEvenIsImaginary)
{
    const double lx = kGeom.Lx;
    for (int n : {2, 4}) {
        for (double kx : {0.0, 1e4, -3.3e4}) {
            const auto x = x_factor(kx, kx, lx, n);
            EXPECT_LT(std::abs(x.real()), 1e-14);
            EXPECT_LT(std::abs(x_factor(kx, kx + 7e3, lx, n).real()), 1e-14);
        }
    }
}

TEST(Coupling, XFactorFundamentalAtZero)
{
    const double lx = kGeom.Lx;
    const auto x = x_factor(0.0, 0.0, lx, 1);
    EXPECT_NEAR(x.real(), 2.0 / units::pi, 1e-15);
    const auto q = overlap_quadrature(0.0, 0.0, lx, [&](double s) { return std::cos(units::pi * s / lx); });
    EXPECT_LT(std::abs(x - q), 1e-12);
}

TEST(Coupling, FactorsMatchQuadratureOnRandomPairs)
{
    std::mt19937_64 rng(20240611);
    const double lx = kGeom.Lx;
    const double ly = kGeom.Ly;
    std::uniform_real_distribution<double> ky_dist(-20.0 * units::pi / ly, 20.0 * units::pi / ly);
    std::uniform_real_distribution<double> kx_dist(-20.0 * units::pi / lx, 20.0 * units::pi / lx);
    std::uniform_int_distribution<int> n_dist(1, 6);
    for (int i = 0; i < 100; ++i) {
        const double ky = ky_dist(rng);
        const double kyp = ky_dist(rng);
        const double y = y_factor(ky, kyp, ly);
        const auto qy = overlap_quadrature(ky, kyp, ly, [&](double s) { return std::cos(units::pi * s / ly); });
        EXPECT_LE(std::abs(y - qy), 1e-8 * std::abs(y) + 1e-13) << ky << " " << kyp;

        const double kx = kx_dist(rng);
        const double kxp = kx_dist(rng);
        const int n = n_dist(rng);
        const double p = n * units::pi / lx;
        const auto x = x_factor(kx, kxp, lx, n);
        const auto qx = overlap_quadrature(kx, kxp, lx, [&](double s) {
            return n % 2 ? std::cos(p * s) : std::sin(p * s);
        });
        EXPECT_LE(std::abs(x - qx), 1e-8 * std::abs(x) + 1e-13) << kx << " " << kxp << " N=" << n;
    }
}

TEST(Coupling, MatrixElementsAreBoundedAndHermitian)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> k(-5e5, 5e5);
    for (const ModeIndex& mode : {ModeIndex{Waveguide{0.0}}, ModeIndex{Cavity{1}}, ModeIndex{Cavity{2}}}) {
        std::vector<WaveVector> ks, kps;
        for (int i = 0; i < 12; ++i) {
            ks.push_back({k(rng), k(rng)});
        }
        kps = ks;
        const auto table = make_matrix_table(mode, kGeom, ks, kps);
        ASSERT_EQ(table.values.size(), ks.size() * kps.size());
        for (std::size_t a = 0; a < ks.size(); ++a) {
            for (std::size_t b = 0; b < ks.size(); ++b) {
                EXPECT_LE(std::abs(table.at(a, b)), 1.0);
                EXPECT_LT(std::abs(table.at(a, b) - std::conj(table.at(b, a))), 1e-15);
            }
        }
    }
}

TEST(Coupling, PlaneWaveAndWaveguideDeltas)
{
    const double q = 1.2e4;
    EXPECT_EQ(matrix_element(PlaneWave{q, 0.0}, kGeom, {1e5, 2e5}, {1e5 + q, 2e5}), std::complex<double>(1.0));
    EXPECT_EQ(matrix_element(PlaneWave{q, 0.0}, kGeom, {1e5, 2e5}, {1e5, 2e5}), std::complex<double>(0.0));
    const double p = units::pi / kGeom.Ly;
    EXPECT_NEAR(matrix_element(Waveguide{q}, kGeom, {0.0, 0.0}, {q, p}).real(), 0.5, 1e-15);
    EXPECT_EQ(matrix_element(Waveguide{q}, kGeom, {0.0, 0.0}, {0.0, p}), std::complex<double>(0.0));
}

TEST(Coupling, ParsevalYIsHalf)
{
    for (double ky : {0.0, 3.1e4, -7e4}) {
        EXPECT_NEAR(parseval_y(ky, kGeom.Ly), 0.5, 1e-3);
    }
}

TEST(Coupling, ParsevalXOddIsHalf)
{
    for (int n : {1, 3, 7}) {
        EXPECT_NEAR(parseval_x(1.5e4, kGeom.Lx, n), 0.5, 1e-3);
    }
    EXPECT_NEAR(parseval_x(1.5e4, kGeom.Lx, 2), 0.5, 1e-3);
}

TEST(Coupling, ParsevalCavityProductIsQuarter)
{
    const auto sums = parseval_sum(Cavity{1}, kGeom, {2e4, -1e4});
    EXPECT_NEAR(sums.value, 0.25, 2e-3);
    EXPECT_NEAR(sums.value, zeta_norm_integral(Cavity{1}, kGeom) / kGeom.area(), 2e-3);
    EXPECT_DOUBLE_EQ(parseval_sum(PlaneWave{1.0, 0.0}, kGeom, {0.0, 0.0}).value, 1.0);
    EXPECT_NEAR(parseval_sum(Waveguide{1e4}, kGeom, {0.0, 0.0}).value, 0.5, 1e-3);
}

TEST(Coupling, ParsevalResidualShrinksWithWindow)
{
    double previous = 1.0;
    for (int lobes = 40; lobes <= 640; lobes *= 2) {
        const double residual = std::abs(parseval_y(2e4, kGeom.Ly, lobes) - 0.5);
        EXPECT_LT(residual, previous) << lobes;
        previous = residual;
    }
    EXPECT_LT(previous, 1e-4);
}

TEST(Coupling, ParsevalWindowTooNarrow)
{
    try {
        parseval_y(0.0, kGeom.Ly, 39);
        FAIL() << "expected WindowTooNarrow";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WindowTooNarrow);
    }
}

TEST(Coupling, AlphaValues)
{
    EXPECT_DOUBLE_EQ(alpha(PlaneWave{1.0, 0.0}, kGeom), 1.0);
    EXPECT_NEAR(alpha(Waveguide{1.0}, kGeom), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_DOUBLE_EQ(alpha(Cavity{3}, kGeom), 0.5);
    for (const ModeIndex& m : {ModeIndex{PlaneWave{1.0, 0.0}}, ModeIndex{Waveguide{1.0}}, ModeIndex{Cavity{2}}}) {
        const double a = alpha(m, kGeom);
        EXPECT_LT(rel_err(a * a, zeta_norm_integral(m, kGeom) / kGeom.area()), 1e-15);
    }
}
