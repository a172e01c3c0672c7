#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "test_support.hpp"

using namespace subcav;
using subcav::testing::linear_grid;
using subcav::testing::make_sheet;
using subcav::testing::rel_err;
using subcav::testing::SheetSpec;

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

double box_z_element(double l) { return -16.0 * l / (9.0 * units::pi * units::pi); }

/// -e * integral psi_a(z) [integral_{lo}^{z} dz'/eps] psi_b(z) dz by nested quadrature; eps is
/// constant inside each layer, so the inner rule only has to respect the layer cuts.
double nested_dipole(const Envelope& a, const Envelope& b, const DielectricStack& stack, double omega,
                     std::vector<double> cuts)
{
    const double lo = a.lo();
    auto inner = [&](double z) {
        auto f = [&](double zp) { return 1.0 / stack.eps(omega, zp); };
        double s = 0.0;
        double prev = lo;
        for (double c : cuts) {
            if (c > prev && c < z) {
                s += gauss<double, 20>::integrate(f, prev, c);
                prev = c;
            }
        }
        return s + gauss<double, 20>::integrate(f, prev, z);
    };
    auto outer = [&](double z) { return a(z) * inner(z) * b(z); };
    double total = 0.0;
    double prev = lo;
    cuts.push_back(a.hi());
    for (double c : cuts) {
        if (c > prev) {
            total += gauss_kronrod<double, 61>::integrate(outer, prev, c, 10, 1e-13);
            prev = c;
        }
    }
    return -units::e_charge * total;
}

}  // namespace

TEST(Emitter, InfiniteWellIsNormalizedAndOrthogonal)
{
    const double l = units::nm(12.0);
    for (int n = 1; n <= 4; ++n) {
        const auto a = Envelope::infinite_well(n, l);
        EXPECT_NEAR(envelope_overlap(a, a), 1.0, 1e-10);
        for (int m = n + 1; m <= 4; ++m) {
            EXPECT_LT(std::abs(envelope_overlap(a, Envelope::infinite_well(m, l))), 1e-8);
        }
    }
}

TEST(Emitter, SampledEnvelopeIsRenormalized)
{
    const auto z = linear_grid(-1e-6, 1e-6, 201);
    std::vector<double> v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        v[i] = 3.0 * std::exp(-z[i] * z[i] / 1e-13);
    }
    const auto psi = Envelope::sampled(z, v);
    EXPECT_NEAR(envelope_overlap(psi, psi), 1.0, 1e-10);
    EXPECT_DOUBLE_EQ(psi(2e-6), 0.0);
    EXPECT_THROW(Envelope::sampled({0.0, 0.0}, {1.0, 1.0}), Error);
    EXPECT_THROW(Envelope::sampled({0.0}, {1.0}), Error);
    EXPECT_THROW(Envelope::infinite_well(0, 1e-6), Error);
}

TEST(Emitter, UniformStackDipoleIsBareOverEps)
{
    const double eps = 12.9;
    const double l = units::nm(10.0);
    const auto sheet = make_sheet();
    const auto stack = DielectricStack::uniform(units::nm(100.0), ConstantPermittivity{eps});
    const auto d_eff = effective_dipole(sheet, stack, 1e14);
    const auto d = bare_dipole(sheet);
    EXPECT_LT(rel_err(d_eff.real(), d.real() / eps), 1e-10);
    EXPECT_EQ(d_eff.imag(), 0.0);
    EXPECT_LT(rel_err(d.real(), -units::e_charge * box_z_element(l)), 1e-10);
    EXPECT_LT(rel_err(std::abs(d_eff), units::e_charge * 16.0 * l / (9.0 * units::pi * units::pi * eps)), 1e-10);
}

TEST(Emitter, DipoleTimesEpsIsEpsIndependent)
{
    const auto sheet = make_sheet();
    const double ref = std::abs(effective_dipole(sheet, DielectricStack::uniform(units::nm(50.0), ConstantPermittivity{1.0}), 1e14));
    for (double eps : {2.0, 9.7, 12.9, 40.0}) {
        const auto stack = DielectricStack::uniform(units::nm(50.0), ConstantPermittivity{eps});
        EXPECT_LT(rel_err(std::abs(effective_dipole(sheet, stack, 1e14)) * eps, ref), 1e-10);
    }
}

TEST(Emitter, SameStateDipoleMatchesQuadrature)
{
    const double l = units::nm(10.0);
    const double eps = 4.0;
    const auto psi = Envelope::infinite_well(1, l);
    const auto stack = DielectricStack::uniform(units::nm(40.0), ConstantPermittivity{eps});
    const auto d = effective_dipole(psi, psi, stack, 1e14);
    EXPECT_LT(rel_err(d.real(), nested_dipole(psi, psi, stack, 1e14, {})), 1e-10);
    // even |psi|^2 leaves only the constant part of the inner integral
    EXPECT_LT(rel_err(d.real(), -units::e_charge * 0.5 * l / eps), 1e-10);
}

TEST(Emitter, LayeredDispersiveDipoleMatchesNestedQuadrature)
{
    const double l = units::nm(10.0);
    const auto stack = DielectricStack({Layer{units::nm(-20.0), units::nm(2.0), ConstantPermittivity{10.0}},
                                        Layer{units::nm(2.0), units::nm(20.0), LorentzPermittivity{2.0, 1e14, 2e14}}});
    const auto a = Envelope::infinite_well(2, l);
    const auto b = Envelope::infinite_well(1, l);
    const double omega = 1.4e14;
    const auto d = effective_dipole(a, b, stack, omega);
    EXPECT_LT(rel_err(d.real(), nested_dipole(a, b, stack, omega, {units::nm(2.0)})), 1e-9);
}

TEST(Emitter, DipoleIsConjugateSymmetric)
{
    const double l = units::nm(8.0);
    const auto stack = DielectricStack({Layer{units::nm(-10.0), units::nm(1.0), ConstantPermittivity{10.0}},
                                        Layer{units::nm(1.0), units::nm(10.0), ConstantPermittivity{3.0}}});
    const auto a = Envelope::infinite_well(2, l);
    const auto b = Envelope::infinite_well(1, l);
    const auto d21 = effective_dipole(a, b, stack, 1e14);
    const auto d12 = effective_dipole(b, a, stack, 1e14);
    EXPECT_LT(std::abs(d12 - std::conj(d21)), 1e-12 * std::abs(d21));
}

TEST(Emitter, SampledBoxApproachesClosedForm)
{
    const double l = units::nm(10.0);
    const auto z = linear_grid(-0.5 * l, 0.5 * l, 2001);
    std::vector<double> v1(z.size()), v2(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        v1[i] = std::cos(units::pi * z[i] / l);
        v2[i] = -std::sin(2.0 * units::pi * z[i] / l);
    }
    const auto stack = DielectricStack::uniform(units::nm(30.0), ConstantPermittivity{1.0});
    const auto d = effective_dipole(Envelope::sampled(z, v2), Envelope::sampled(z, v1), stack, 1e14);
    EXPECT_LT(rel_err(d.real(), -units::e_charge * box_z_element(l)), 1e-5);
}

TEST(Emitter, WellMustFitInsideStack)
{
    const auto sheet = make_sheet();
    const auto thin = DielectricStack::uniform(units::nm(5.0), ConstantPermittivity{1.0});
    try {
        effective_dipole(sheet, thin, 1e14);
        FAIL() << "expected OutOfDomain";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OutOfDomain);
    }
}

TEST(Emitter, NonTransparentStackIsRejected)
{
    const auto sheet = make_sheet();
    const auto stack = DielectricStack::uniform(units::nm(50.0), LorentzPermittivity{1.0, 1e14, 2e14});
    try {
        effective_dipole(sheet, stack, 2.05e14);
        FAIL() << "expected NonTransparent";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonTransparent);
    }
}

TEST(Emitter, QuadratureFailureIsReported)
{
    const auto sheet = make_sheet();
    const auto stack = DielectricStack::uniform(units::nm(50.0), ConstantPermittivity{1.0});
    DipoleQuadrature opts;
    opts.max_doublings = 0;
    try {
        effective_dipole(sheet, stack, 1e14, opts);
        FAIL() << "expected QuadratureNotConverged";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::QuadratureNotConverged);
    }
}

TEST(Emitter, ParallelSubbandsGiveFlatTransition)
{
    const auto sheet = make_sheet();
    const double expected = units::omega_from_meV(100.0);
    for (double k : sheet.k_grid()) {
        EXPECT_LT(rel_err(sheet.transition_freq(k), expected), 1e-14);
    }
    EXPECT_LT(rel_err(transition_freq(sheet, 0.0), expected), 1e-15);
}

TEST(Emitter, NonParallelSubbandsFollowParabolicFormula)
{
    SheetSpec spec;
    spec.m2 = 2.0 * spec.m1;
    const auto sheet = make_sheet(spec);
    const double k = 3e6;
    const double m1 = spec.m1 * units::electron_mass;
    // hand evaluation: [dE + hbar^2 k^2 / 2 (1/(2 m1) - 1/m1)] / hbar
    const double expected = (units::meV(100.0) - units::hbar * units::hbar * k * k / (4.0 * m1)) / units::hbar;
    EXPECT_LT(rel_err(sheet.transition_freq(k), expected), 1e-14);
    EXPECT_LT(sheet.transition_freq(k), sheet.transition_freq(0.0));
}

TEST(Emitter, NegativeTransitionFrequencyIsRejected)
{
    SheetSpec spec;
    spec.m2 = 10.0 * spec.m1;
    spec.delta_e_meV = 1.0;
    const auto sheet = make_sheet(spec);
    try {
        sheet.transition_freq(5e6);
        FAIL() << "expected NonPositiveFrequency";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonPositiveFrequency);
    }
    EXPECT_THROW(sheet.transition_freq(-1.0), Error);
}

TEST(Emitter, SheetValidation)
{
    SheetSpec spec;
    spec.points = 15;
    EXPECT_THROW(make_sheet(spec), Error);
    spec = {};
    spec.n2 = 1.2;
    EXPECT_THROW(make_sheet(spec), Error);
    spec = {};
    spec.gamma21 = 0.0;
    EXPECT_THROW(make_sheet(spec), Error);
    spec = {};
    spec.degeneracy = 0.0;
    EXPECT_THROW(make_sheet(spec), Error);
    const auto sheet = make_sheet();
    std::vector<double> bad(sheet.k_grid().size(), -0.1);
    std::vector<double> ok(sheet.k_grid().size(), 0.2);
    EXPECT_THROW(sheet.with_populations(bad, ok), Error);
    EXPECT_NO_THROW(sheet.with_populations(ok, ok));
}

TEST(Emitter, KSumOfFilledDisk)
{
    const double kf = 2e6;
    SheetSpec spec;
    spec.points = 20001;
    spec.k_max_per_nm = 0.4;
    const auto sheet = make_sheet(spec);
    const Geometry g{units::um(2.0), units::um(3.0), units::nm(100.0)};
    const double sum = k_sum(sheet, g, [&](const KPoint& p) { return p.k <= kf ? 1.0 : 0.0; });
    EXPECT_LT(rel_err(sum, 2.0 * g.area() * kf * kf / (4.0 * units::pi)), 1e-3);
}

TEST(Emitter, KSumOfZeroIsZero)
{
    const auto sheet = make_sheet();
    const Geometry g{units::um(2.0), units::um(3.0), units::nm(100.0)};
    EXPECT_EQ(k_sum(sheet, g, [](const KPoint&) { return 0.0; }), 0.0);
}

TEST(Emitter, KSumGaussianConvergesUnderRefinement)
{
    const double k0 = 8e5;
    auto gaussian = [&](const KPoint& p) { return std::exp(-p.k * p.k / (k0 * k0)); };
    const Geometry g{units::um(2.0), units::um(3.0), units::nm(100.0)};
    SheetSpec coarse;
    coarse.points = 401;
    SheetSpec fine = coarse;
    fine.points = 4001;
    const double a = k_sum(make_sheet(coarse), g, gaussian);
    const double b = k_sum(make_sheet(fine), g, gaussian);
    EXPECT_LT(rel_err(a, b), 1e-4);
    EXPECT_LT(rel_err(b, 2.0 * g.area() / (2.0 * units::pi) * 0.5 * k0 * k0), 1e-4);
}

TEST(Emitter, KSumIsLinear)
{
    const auto sheet = make_sheet();
    const Geometry g{units::um(2.0), units::um(3.0), units::nm(100.0)};
    auto f = [](const KPoint& p) { return std::cos(1e-6 * p.k); };
    auto h = [](const KPoint& p) { return p.n2 * 1e-7 * p.k; };
    const double lhs = k_sum(sheet, g, [&](const KPoint& p) { return 2.5 * f(p) - 0.75 * h(p); });
    const double rhs = 2.5 * k_sum(sheet, g, f) - 0.75 * k_sum(sheet, g, h);
    EXPECT_LT(rel_err(lhs, rhs), 1e-12);
}

TEST(Emitter, FermiOccupation)
{
    const Subband band{0.0, 0.067 * units::electron_mass, Envelope::infinite_well(1, units::nm(10.0))};
    const auto k = linear_grid(0.0, 5e6, 64);
    const double mu = units::meV(20.0);
    const auto step = fermi_occupation(band, k, mu, 0.0);
    const auto warm = fermi_occupation(band, k, mu, units::meV(10.0));
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double e = 0.5 * units::hbar * units::hbar * k[i] * k[i] / band.effective_mass;
        EXPECT_EQ(step[i], e < mu ? 1.0 : 0.0);
        EXPECT_NEAR(warm[i], 1.0 / (1.0 + std::exp((e - mu) / units::meV(10.0))), 1e-15);
        EXPECT_GE(warm[i], 0.0);
        EXPECT_LE(warm[i], 1.0);
    }
    EXPECT_THROW(fermi_occupation(band, k, mu, -1.0), Error);
}
