#include <gtest/gtest.h>

#include <limits>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "test_support.hpp"

using namespace subcav;
using subcav::testing::make_sheet;
using subcav::testing::rel_err;
using subcav::testing::SheetSpec;

namespace {

using boost::math::quadrature::gauss_kronrod;

double lorentz_quadrature(double a, double b, double x, double y)
{
    auto f = [&](double w) { return 1.0 / (((w - x) * (w - x) + a * a) * ((w - y) * (w - y) + b * b)); };
    const double inf = std::numeric_limits<double>::infinity();
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    double s = gauss_kronrod<double, 61>::integrate(f, -inf, lo, 15, 1e-13)
               + gauss_kronrod<double, 61>::integrate(f, hi, inf, 15, 1e-13);
    if (hi > lo) {
        s += gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-13);
    }
    return s / units::pi;
}

LangevinParams params(double gr, double gs = 0.0)
{
    LangevinParams p;
    p.gamma_r = gr;
    p.gamma_sigma = gs;
    return p;
}

std::vector<EnsemblePoint> flat_ensemble(std::size_t n, double weight, double n1, double n2, double gamma21,
                                         double omega21)
{
    return std::vector<EnsemblePoint>(n, EnsemblePoint{weight, n1, n2, gamma21, omega21});
}

}  // namespace

TEST(Langevin, EqualPopulationsAreTransparent)
{
    const auto e = flat_ensemble(8, 3.0, 0.4, 0.4, 2.0, 100.0);
    const auto r = medium_response(e, 0.5, 97.0);
    EXPECT_EQ(r.gamma, 0.0);
    EXPECT_EQ(r.delta_omega, 0.0);
    EXPECT_FALSE(r.inverted);
}

TEST(Langevin, InversionGivesGain)
{
    const auto e = flat_ensemble(4, 1.0, 0.1, 0.7, 2.0, 100.0);
    const auto r = medium_response(e, 0.5, 99.0);
    EXPECT_LT(r.gamma, 0.0);
    EXPECT_TRUE(r.inverted);
}

TEST(Langevin, ResonantAbsorption)
{
    const auto e = flat_ensemble(5, 2.0, 0.9, 0.2, 4.0, 50.0);
    const auto r = medium_response(e, 0.3, 50.0);
    EXPECT_NEAR(r.gamma, 0.3 * 5 * 2.0 * 0.7 / 4.0, 1e-15);
    EXPECT_EQ(r.delta_omega, 0.0);
}

TEST(Langevin, AbsorbingLinePushesLowerModeDown)
{
    const auto e = flat_ensemble(1, 1.0, 1.0, 0.0, 1.0, 100.0);
    const auto below = medium_response(e, 1.0, 98.0);
    const auto above = medium_response(e, 1.0, 102.0);
    EXPECT_LT(below.delta_omega, 0.0);
    EXPECT_GT(above.delta_omega, 0.0);
    // Lorentzian dispersion: -Omega^2 Delta / (Delta^2 + gamma21^2) with Delta = omega21 - omega_nu
    EXPECT_NEAR(below.delta_omega, -2.0 / 5.0, 1e-15);
    EXPECT_NEAR(below.gamma, 1.0 / 5.0, 1e-15);
}

TEST(Langevin, SheetResponseUsesKSum)
{
    SheetSpec spec;
    spec.n1 = 0.6;
    spec.n2 = 0.1;
    const auto sheet = make_sheet(spec);
    const Geometry g{units::um(2.0), units::um(2.0), units::nm(100.0)};
    const double w = sheet.transition_freq(0.0);
    const auto r = medium_response(sheet, g, 1e20, w);
    const double n = k_sum(sheet, g, [](const KPoint& p) { return p.n1 - p.n2; });
    EXPECT_LT(rel_err(r.gamma, 1e20 * n / spec.gamma21), 1e-13);
}

TEST(Langevin, NoEmittersNoPhotons)
{
    const auto e = flat_ensemble(4, 1.0, 0.0, 0.0, 1.0, 10.0);
    const auto n = photon_number(e, 0.01, 10.0, params(1.0));
    EXPECT_EQ(n.total, 0.0);
}

TEST(Langevin, ReferencePhotonNumber)
{
    // Omega^2 = 0.01, N2 = 100 in one bin, Gamma_t = gamma21 = 1, resonance
    const auto e = flat_ensemble(1, 100.0, 1.0, 1.0, 1.0, 5.0);
    const auto n = photon_number(e, 0.01, 5.0, params(1.0));
    EXPECT_NEAR(n.spontaneous, 0.5, 1e-15);
    EXPECT_NEAR(n.total, 0.5, 1e-15);
}

TEST(Langevin, ThermalCavityMatchesReservoir)
{
    const double omega = units::omega_from_meV(20.0);
    LangevinParams p = params(1e12);
    p.T_r = units::meV(15.0);
    const auto e = flat_ensemble(4, 1.0, 0.0, 0.0, 1e12, omega);
    const auto n = photon_number(e, 1e20, omega, p);
    EXPECT_LT(rel_err(n.total, 1.0 / std::expm1(20.0 / 15.0)), 1e-14);
    EXPECT_EQ(thermal_occupation(omega, 0.0), 0.0);
}

TEST(Langevin, LorentzProductMatchesQuadrature)
{
    EXPECT_NEAR(lorentz_product_integral(1.0, 1.0, 0.0), 0.5, 1e-16);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> width(0.01, 10.0);
    std::uniform_real_distribution<double> det(-30.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        const double a = width(rng);
        const double b = width(rng);
        const double d = det(rng);
        EXPECT_LT(rel_err(lorentz_product_integral(a, b, d), lorentz_quadrature(a, b, d, 0.0)), 1e-8)
            << a << " " << b << " " << d;
    }
}

TEST(Langevin, PhotonNumberTermsArePositive)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<EnsemblePoint> e;
    for (int i = 0; i < 40; ++i) {
        e.push_back({1.0 + u(rng), 0.5 * u(rng), 0.5 * u(rng), 0.5 + u(rng), 100.0 + 5.0 * (u(rng) - 0.5)});
    }
    const auto n = photon_number(e, 1e-3, 100.0, params(2.0, 0.5));
    for (double t : n.per_bin) {
        EXPECT_GE(t, 0.0);
    }
}

TEST(Langevin, UnstableWhenGainExceedsLoss)
{
    const auto e = flat_ensemble(1, 100.0, 0.0, 1.0, 1.0, 5.0);
    try {
        photon_number(e, 0.05, 5.0, params(1.0));
        FAIL() << "expected Unstable";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::Unstable);
    }
    EXPECT_THROW(params(-1.0).validate(), Error);
}

TEST(Langevin, PowerFromPhotonNumber)
{
    const double omega = 1.0 / units::hbar;
    const auto e = flat_ensemble(1, 100.0, 1.0, 1.0, 1.0, omega);
    EXPECT_NEAR(emitted_power(e, 0.01, omega, params(1.0)), 1.0, 1e-14);
    EXPECT_EQ(emitted_power(e, 0.01, omega, params(0.0, 1.0)), 0.0);
}

TEST(Langevin, PowerChainExcludesThermalPhotons)
{
    const double omega = units::omega_from_meV(30.0);
    LangevinParams p = params(2e12, 1e12);
    p.T_r = units::meV(10.0);
    p.T_sigma = units::meV(25.0);
    const auto e = flat_ensemble(6, 1e3, 0.2, 0.3, 3e12, omega * 1.001);
    const auto n = photon_number(e, 1e15, omega, p);
    EXPECT_GT(n.thermal, 0.0);
    EXPECT_DOUBLE_EQ(emitted_power(e, 1e15, omega, p), 2.0 * p.gamma_r * units::hbar * omega * n.spontaneous);
}

TEST(Langevin, PowerEqualsCavityRateTimesPopulation)
{
    const double omega = units::omega_from_meV(100.0);
    const double g21 = units::omega_from_meV(5.0);
    const auto e = flat_ensemble(10, 250.0, 0.3, 0.3, g21, omega);
    const auto p = params(2.0 * g21, 0.5 * g21);
    const double rabi2 = 1e18;
    const double dw = effective_linewidth(g21, omega, omega, p);
    const double rate = cavity_rate_from_rabi(rabi2, omega, omega, dw);
    EXPECT_LT(rel_err(emitted_power(e, rabi2, omega, p), units::hbar * omega * rate * 2500.0 * 0.3), 1e-13);
    const auto ss = steady_state(e, rabi2, omega, p);
    EXPECT_LT(rel_err(ss.delta_omega_eff, dw), 1e-14);
    EXPECT_LT(rel_err(ss.power, units::hbar * omega * rate * ss.n2_total), 1e-13);
}

TEST(Langevin, QEffAtMatchedLoss)
{
    const double w21 = 1e14;
    const double g21 = 1e12;
    EXPECT_LT(rel_err(q_eff(g21, w21, w21, params(g21)), w21 / (4.0 * g21)), 1e-14);
    EXPECT_LT(rel_err(q_norm(g21, w21, w21, params(g21)), 0.5), 1e-14);
}

TEST(Langevin, QEffStrongOutcouplingLimit)
{
    const double w21 = 1e14;
    const double g21 = 1e12;
    const double gr = 1e15;
    const auto p = params(gr, 1e9);
    EXPECT_LT(rel_err(q_eff(g21, w21, w21, p), w21 / (2.0 * (g21 + gr))), 2e-6);
    // resonant closed form with any losses
    const double gt = gr + 1e9;
    EXPECT_LT(rel_err(q_eff(g21, w21, w21, p), w21 * gr / (2.0 * gt * (gt + g21))), 1e-14);
}

TEST(Langevin, DetunedLinewidthMatchesQuadrature)
{
    const double w21 = 100.0;
    const double g21 = 0.7;
    const auto p = params(1.3, 0.4);
    for (double wn : {96.0, 99.5, 103.0}) {
        const double gt = 1.7;
        const double inv = 2.0 * p.gamma_r * g21 / 4.0 * lorentz_quadrature(gt, g21, wn, w21);
        EXPECT_LT(rel_err(effective_linewidth(g21, w21, wn, p), 1.0 / inv), 1e-6) << wn;
    }
}

TEST(Langevin, OptimalOutcouplingMaximizesQEff)
{
    const double g21 = 1.0;
    const double g = 0.3;
    const double best = optimal_gamma_r(g, g21);
    EXPECT_NEAR(best, std::sqrt(0.3 * 1.3), 1e-15);
    double arg = 0.0;
    double max = 0.0;
    const double step = 1e-4;
    for (double x = step; x < 10.0; x += step) {
        const double q = q_eff(g21, 50.0, 50.0, params(x, g));
        if (q > max) {
            max = q;
            arg = x;
        }
    }
    EXPECT_NEAR(arg, best, step);
    // medium absorption contributes to g the same way as Ohmic loss
    EXPECT_LT(rel_err(q_eff(g21, 50.0, 50.0, params(best, 0.1), 0.2), q_eff(g21, 50.0, 50.0, params(best, g))),
              1e-14);
}

TEST(Langevin, NarrowLineLimit)
{
    const double g21 = 1.0;
    // n1 = n2 keeps gamma = 0, so Gamma_t / gamma21 is exactly 100
    const auto e = flat_ensemble(3, 10.0, 0.5, 0.5, g21, 1000.0);
    const auto p = params(50.0, 50.0);
    const double rabi2 = 1e-4;
    for (double wn : {1000.0, 1030.0}) {
        const auto lim = limit_powers(e, rabi2, wn, p);
        EXPECT_EQ(lim.regime, LineRegime::Narrow);
        EXPECT_NEAR(lim.ratio, 100.0, 1e-6);
        EXPECT_LT(rel_err(lim.narrow, emitted_power(e, rabi2, wn, p)), 0.05) << wn;
    }
}

TEST(Langevin, WideLineLimit)
{
    const double g21 = 100.0;
    const auto e = flat_ensemble(3, 10.0, 0.5, 0.5, g21, 1000.0);
    const auto p = params(0.5, 0.5);
    const double rabi2 = 1e-6;
    for (double wn : {1000.0, 1050.0}) {
        const auto lim = limit_powers(e, rabi2, wn, p);
        EXPECT_EQ(lim.regime, LineRegime::Wide);
        EXPECT_LT(rel_err(lim.wide, emitted_power(e, rabi2, wn, p)), 0.05) << wn;
    }
}

TEST(Langevin, LimitsBoundTheExactPowerAtMatchedWidths)
{
    const auto e = flat_ensemble(3, 10.0, 0.0, 0.5, 2.0, 1000.0);
    const auto p = params(1.5, 0.5);
    const auto lim = limit_powers(e, 1e-6, 1000.0, p);
    const double exact = emitted_power(e, 1e-6, 1000.0, p);
    EXPECT_EQ(lim.regime, LineRegime::Intermediate);
    EXPECT_LE(exact, lim.narrow);
    EXPECT_LE(exact, lim.wide);
}

TEST(Langevin, PowerIsMonotoneInUpperPopulation)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<EnsemblePoint> e;
    for (int i = 0; i < 20; ++i) {
        e.push_back({1.0, 0.5 + 0.5 * u(rng), 0.3 * u(rng), 0.5 + u(rng), 100.0 + 4.0 * (u(rng) - 0.5)});
    }
    const auto p = params(1.0, 0.5);
    for (int t = 0; t < 50; ++t) {
        auto bumped = e;
        const auto j = static_cast<std::size_t>(u(rng) * 20.0) % 20;
        bumped[j].n2 = std::min(1.0, bumped[j].n2 + 0.2 * u(rng));
        EXPECT_GE(emitted_power(bumped, 1e-3, 100.0, p), emitted_power(e, 1e-3, 100.0, p));
    }
}

TEST(Langevin, AbsorbedShiftMovesModeFrequency)
{
    const auto e = flat_ensemble(1, 1.0, 1.0, 0.0, 1.0, 100.0);
    const auto raw = steady_state(e, 1.0, 98.0, params(3.0));
    const auto hot = steady_state(e, 1.0, 98.0, params(3.0), true);
    EXPECT_EQ(raw.omega_nu, 98.0);
    EXPECT_NEAR(hot.omega_nu, 98.0 + raw.delta_omega_shift, 1e-14);
    EXPECT_GE(hot.photon_number, 0.0);
    EXPECT_GE(hot.power, 0.0);
}

TEST(Langevin, GeometricFactorSpotValue)
{
    const double lambda = units::um(10.0);
    const double eps = 9.0;
    const double h = lambda / (2.0 * std::sqrt(eps));
    const Geometry g{h, h, lambda / (20.0 * std::sqrt(eps))};
    EXPECT_LT(rel_err(geometric_factor(lambda, eps, g), 60.0 / (units::pi * units::pi)), 1e-13);
}

TEST(Langevin, FreeSpaceBreakdownReproducesPower)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        SheetSpec spec;
        spec.width_nm = 6.0 + 10.0 * u(rng);
        spec.delta_e_meV = 80.0 + 150.0 * u(rng);
        spec.n1 = 0.2 * u(rng);
        spec.n2 = spec.n1 + 0.1 * u(rng);
        spec.gamma21 = units::omega_from_meV(1.0 + 9.0 * u(rng));
        const auto sheet = make_sheet(spec);
        const double eps = 1.0 + 12.0 * u(rng);
        const auto stack = DielectricStack::uniform(units::nm(50.0 + 150.0 * u(rng)), ConstantPermittivity{eps});
        const Geometry g{units::um(2.0 + 5.0 * u(rng)), units::um(2.0 + 5.0 * u(rng)), stack.thickness()};
        const double w = sheet.transition_freq(0.0);
        LangevinParams p = params(spec.gamma21 * (0.5 + 2.0 * u(rng)), spec.gamma21 * u(rng));
        const double rabi2 = rabi_squared(effective_dipole(sheet, stack, w), stack, g, w);
        const auto ensemble = spectral_ensemble(sheet, g);
        if (!(p.gamma_r + p.gamma_sigma + medium_response(ensemble, rabi2, w).gamma > 0.0)) {
            p.gamma_sigma += 2.0 * std::abs(medium_response(ensemble, rabi2, w).gamma);
        }
        const auto b = power_free_space_reference(sheet, g, stack, w, p);
        EXPECT_LT(rel_err(b.product, emitted_power(ensemble, rabi2, w, p)), 1e-10) << i;
    }
}

TEST(Langevin, FreeSpaceBreakdownQEffAtMatchedLoss)
{
    SheetSpec spec;
    spec.n1 = 0.5;
    spec.n2 = 0.5;
    const auto sheet = make_sheet(spec);
    const auto stack = DielectricStack::uniform(units::nm(100.0), ConstantPermittivity{12.9});
    const Geometry g{units::um(3.0), units::um(3.0), stack.thickness()};
    const double w = sheet.transition_freq(0.0);
    const auto b = power_free_space_reference(sheet, g, stack, w, params(spec.gamma21));
    EXPECT_LT(rel_err(b.q_eff, w / (4.0 * spec.gamma21)), 1e-13);

    const auto layered = DielectricStack::from_thicknesses(
        {{units::nm(50.0), ConstantPermittivity{12.9}}, {units::nm(50.0), ConstantPermittivity{10.0}}});
    try {
        power_free_space_reference(sheet, g, layered, w, params(spec.gamma21));
        FAIL() << "expected NonUniformStack";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonUniformStack);
    }
}
