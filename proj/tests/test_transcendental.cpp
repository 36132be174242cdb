#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include <random>

#include "whml/transcendental.hpp"

using namespace whml;

TEST(Ts, ZeroAndLimits)
{
    // tau = alpha puts sin(pi) in the numerator
    EXPECT_LT(std::abs(t_s({0.3, 0.3, 0.0})), 1e-15);
    EXPECT_NEAR(std::abs(t_s({0.3, 0.6, 40.0})), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(t_s({0.7, 1.3, -40.0})), 1.0, 1e-12);
    EXPECT_THROW(t_s({0.25, 0.5, 0.0}), error);
}

TEST(Ts, IndependentOfM)
{
    for (double xi : {0.0, 0.4, 3.0, -2.0}) {
        SpectralParams lo(0.3, 2, 1.2, Regime::LOW), hi(0.3, 2, 2.2, Regime::HIGH);
        EXPECT_LT(std::abs(t_s(xi, lo) - t_s(xi, hi)), 1e-14);
        EXPECT_LT(std::abs(t_s(xi, lo) - t_s({0.3, lo.tau(), xi})), 1e-14);
    }
}

TEST(Tb, ZeroValueAndBounds)
{
    double a = 0.4, tau = 0.5, sg = tau + 1 - 2 * a;
    cplx v0 = t_b({a, tau, 0.0});
    EXPECT_NEAR(v0.imag(), 0.0, 1e-16);
    EXPECT_NEAR(v0.real(), std::sin(pi * a) / pi * boost::math::beta(sg, 2 * a), 1e-14);
    double bound = std::sin(pi * a) / pi * boost::math::tgamma(2 * a) * boost::math::tgamma(sg) /
                   boost::math::tgamma(sg + 2 * a);
    EXPECT_LE(std::abs(t_b({a, tau, 0.3})), bound);
    for (double aa : {0.1, 0.25, 0.45})
        for (double t = aa; t < 1.0; t += 0.05)
            for (double xi : {0.0, 0.5, 3.0})
                EXPECT_LT(std::abs(t_b({aa, t, xi})), 2 / pi);
    EXPECT_THROW(t_b({0.6, 0.1, 0.0}), error);
}

TEST(ConjugatePairing, BothSides)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> A(0.05, 0.95), T(0.05, 1.95), X(0.01, 8);
    for (int i = 0; i < 100; ++i) {
        TranscendParams tp{A(rng), T(rng), X(rng)};
        if (tp.tau + 1 - 2 * tp.alpha <= 0)
            continue;
        TranscendParams tm = tp;
        tm.xi = -tp.xi;
        EXPECT_LT(std::abs(t_s(tm) - std::conj(t_s(tp))), 1e-13 * std::max(1.0, std::abs(t_s(tp))));
        EXPECT_LT(std::abs(t_b(tm) - std::conj(t_b(tp))), 1e-15);
    }
}

TEST(ResidualZero, Examples)
{
    EXPECT_NEAR(te_residual_zero(0.0, 0.3), 0.0, 1e-15);
    double a = 0.3;
    EXPECT_NEAR(te_lhs(1.0, a), std::tgamma(2 * a) * std::sin(pi * a) / (1 - 2 * a), 1e-13);
    EXPECT_GT(te_residual_zero(1.0, a), 0.0);
    // alpha = 1/2: Gamma(1 - tau) Gamma(1 + tau) sin pi(1/2 - tau) = pi tau cos(pi tau) / sin(pi tau)
    for (double tau : {1.1, 1.3, 1.45}) {
        double lhs = te_lhs(tau, 0.5);
        double via_tan = pi * tau / std::tan(pi * tau);
        EXPECT_NEAR(lhs, via_tan, 1e-12);
    }
    EXPECT_THROW(te_lhs(1.2, 0.6), error);
}

TEST(AlphaC, PaperValues)
{
    EXPECT_NEAR(alpha_c(0.5), 0.4303, 1e-3);
    EXPECT_NEAR(alpha_c(0.75), 0.726, 2e-3);
    double t = pi * (1 + alpha_c(0.5));
    EXPECT_NEAR(std::tan(t), t, 1e-8 * t);
}

TEST(AlphaC, BoostRootOracle)
{
    // independent TOMS748 root of the same equation
    for (double a : {0.1, 0.3, 0.62, 0.9}) {
        auto f = [a](double tau) {
            return boost::math::tgamma(2 * a - tau) * boost::math::tgamma(tau + 1) * std::sin(pi * (a - tau)) -
                   boost::math::tgamma(2 * a) * std::sin(pi * a);
        };
        double lo = (a < 0.5 ? 1.0 : 2 * a) + 1e-9, hi = 1 + a - 1e-9;
        boost::uintmax_t it = 200;
        auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), it);
        EXPECT_NEAR(alpha_c(a), 0.5 * (r.first + r.second) - 1, 1e-11) << a;
    }
}

TEST(AlphaC, RootResidualGrid)
{
    for (int i = 1; i <= 50; ++i) {
        double a = i / 51.0;
        double scale = std::abs(std::tgamma(2 * a) * std::sin(pi * a));
        EXPECT_LT(std::abs(te_residual_zero(1 + alpha_c(a), a)), 1e-10 * scale) << a;
    }
}

TEST(AlphaC, GapShrinksNearOne)
{
    double g1 = 0.9 - alpha_c(0.9), g2 = 0.95 - alpha_c(0.95), g3 = 0.99 - alpha_c(0.99);
    EXPECT_GT(g1, g2);
    EXPECT_GT(g2, g3);
    EXPECT_GT(g3, 0.0);
    EXPECT_THROW(alpha_c(1.0), error);
    EXPECT_THROW(alpha_c(0.5, 1e-14), error);
}

TEST(DerivativeSign, ThreeRegions)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto f = [](double tau, double a) { return te_lhs(tau, a); };
    int n = 0;
    for (int i = 0; i < 1000; ++i) {
        double a, tau;
        switch (i % 3) {
        case 0:
            a = 0.5 * (0.01 + 0.98 * U(rng));
            tau = a * (0.01 + 0.98 * U(rng));
            break;
        case 1:
            a = 0.01 + 0.98 * U(rng);
            tau = 2 * a + (1 - a) * (0.01 + 0.98 * U(rng));
            break;
        default:
            a = 0.5 * (0.01 + 0.98 * U(rng));
            tau = 1 + 2 * a + (1 - 2 * a) * (0.01 + 0.98 * U(rng));
            break;
        }
        double h = 1e-6 * std::min({tau, 1.0, std::abs(tau - 2 * a)});
        double d = (f(tau + h, a) - f(tau - h, a)) / (2 * h);
        EXPECT_GT(f(tau, a), 0.0) << a << " " << tau;
        EXPECT_LT(d, 0.0) << a << " " << tau;
        ++n;
    }
    EXPECT_EQ(n, 1000);
}

TEST(ArgBetaSeries, Examples)
{
    EXPECT_LT(arg_beta_series_residual(1.2, 0.8, 0.0, 10), 1e-15);
    EXPECT_LT(arg_beta_series_residual(1.2, 0.8, 0.5, 100000), 1e-6);
    for (double g : {0.2, 0.5, 0.9}) {
        double arg = principal_arg(complex_beta(cplx(1.2, 0.5), g));
        EXPECT_LT(arg, 0.0);
        EXPECT_GT(arg, -pi / 2);
    }
}

TEST(InequalityScans, AllRegionsPositive)
{
    for (auto r : {TeRegion::TE2, TeRegion::TE3, TeRegion::TE4, TeRegion::TE6, TeRegion::TE7, TeRegion::TE8}) {
        auto rep = inequality_scan(r, 20);
        EXPECT_GT(rep.min_margin, 0.0) << rep.name;
        EXPECT_TRUE(rep.pass);
    }
    EXPECT_THROW(inequality_scan(TeRegion::TE2, 10), error);
}

TEST(InequalityScans, Te7RealPartNonPositive)
{
    for (double a = 0.5; a < 1.0; a += 0.04)
        for (double tau = 1 + a; tau < 2.0; tau += 0.03)
            for (double xi : {0.01, 0.1, 0.24})
                EXPECT_LE(t_s({a, tau, xi}).real(), 1e-12) << a << " " << tau << " " << xi;
}

TEST(InequalityScans, Deterministic)
{
    auto a = inequality_scan(TeRegion::TE3, 24), b = inequality_scan(TeRegion::TE3, 24);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(Certificates, LowAndHigh)
{
    auto lo = no_solution_certificate(CertRegime::LOW, 30);
    EXPECT_GT(lo.min_margin, 1e-3);
    auto hi = no_solution_certificate(CertRegime::HIGH, 30);
    EXPECT_TRUE(hi.pass);
    EXPECT_LE(hi.min_margin, 1.0);
    auto only = no_solution_certificate(CertRegime::HIGH, 30, {0.75});
    EXPECT_NE(only.notes.find("tau=1.7"), std::string::npos);
    EXPECT_NE(only.notes.find("xi=0"), std::string::npos);
}
