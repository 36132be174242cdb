#pragma once

// Wiener-Hopf, Mellin and loop-function symbols for the two regularity regimes.

#include <cmath>
#include <complex>
#include <string>

#include "error.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace whml {

enum class Regime { LOW, HIGH };

inline const char* regime_name(Regime r) { return r == Regime::LOW ? "LOW" : "HIGH"; }

class SpectralParams {
public:
    SpectralParams(double alpha, double p, double s, Regime regime)
        : alpha_(alpha), p_(p), s_(s), regime_(regime)
    {
        if (!(p > 1.0 && std::isfinite(p)))
            fail(errc::domain, "p must lie in (1, infinity)");
        const double ip = 1.0 / p;
        if (regime == Regime::LOW) {
            if (!(alpha > 0.0 && alpha < 0.5))
                fail(errc::domain, "LOW regime requires 0 < alpha < 1/2");
            if (!(s > ip && s < 1.0 + ip))
                fail(errc::domain, "LOW regime requires 1/p < s < 1 + 1/p");
        } else {
            if (!(alpha > 0.0 && alpha < 1.0))
                fail(errc::domain, "HIGH regime requires 0 < alpha < 1");
            if (!(s > 1.0 + ip && s < 2.0 + ip))
                fail(errc::domain, "HIGH regime requires 1 + 1/p < s < 2 + 1/p");
        }
    }

    // regime from s; s = 1 + 1/p belongs to neither window
    static SpectralParams infer(double alpha, double p, double s)
    {
        if (!(p > 1.0))
            fail(errc::domain, "p must lie in (1, infinity)");
        return SpectralParams(alpha, p, s, s < 1.0 + 1.0 / p ? Regime::LOW : Regime::HIGH);
    }

    double alpha() const { return alpha_; }
    double p() const { return p_; }
    double s() const { return s_; }
    Regime regime() const { return regime_; }
    int m() const { return regime_ == Regime::LOW ? 1 : 2; }
    double inv_p() const { return 1.0 / p_; }
    double inv_pprime() const { return 1.0 - 1.0 / p_; }
    double tau() const { return s_ - 1.0 / p_; }
    double nu() const { return m() - s_ + alpha_; }
    double nu_prime() const { return m() - s_ + 2.0 * alpha_; }
    // first Beta argument without the i xi part: s - 2 alpha + 1/p'
    double sigma() const { return s_ - 2.0 * alpha_ + inv_pprime(); }

private:
    double alpha_, p_, s_;
    Regime regime_;
};

// arg(xi + i) in (0, pi); arg(xi - i) is its negative
inline double upper_arg(double xi) { return std::atan2(1.0, xi); }

// (1+xi^2)^alpha (xi-i)^{s-2alpha-m} (xi+i)^{m-s} = exp(2 i nu arg(xi+i))
inline cplx wh_c1(double xi, const SpectralParams& sp)
{
    return std::exp(2.0 * I * sp.nu() * upper_arg(xi));
}

inline cplx wh_c1_limit_plus(const SpectralParams&) { return 1.0; }
inline cplx wh_c1_limit_minus(const SpectralParams& sp) { return std::exp(2.0 * pi * I * sp.nu()); }

// (-i xi)^{2alpha} (xi-i)^{s-2alpha-m} (xi+i)^{m-s}
inline cplx wh_c2(double xi, const SpectralParams& sp)
{
    if (xi == 0.0)
        return 0.0;
    const double a = sp.alpha();
    double mod = std::pow(xi * xi / (1.0 + xi * xi), a);
    double ph = (xi > 0.0 ? -pi * a : pi * a) + 2.0 * sp.nu() * upper_arg(xi);
    return std::polar(mod, ph);
}

inline cplx wh_c2_limit_plus(const SpectralParams& sp) { return std::exp(-I * pi * sp.alpha()); }
inline cplx wh_c2_limit_minus(const SpectralParams& sp)
{
    return std::exp(-I * pi * sp.alpha()) * std::exp(2.0 * pi * I * sp.nu_prime());
}

// B(s - 2 alpha + 1/p' + i xi, 2 alpha) / Gamma(2 alpha)
inline cplx mellin_b2(double xi, const SpectralParams& sp)
{
    const double sg = sp.sigma();
    if (!(sg > 0.0))
        fail(errc::pole, "mellin_b2 requires s - 2 alpha + 1 - 1/p > 0");
    return std::exp(-log_gamma_ratio(cplx(sg, xi), 2.0 * sp.alpha()));
}

// a2(0) b2 = -(sin pi alpha / pi) B(s - 2 alpha + 1/p' + i xi, 2 alpha)
inline cplx a2b2(double xi, const SpectralParams& sp)
{
    const double a = sp.alpha();
    return -std::sin(pi * a) / pi * std::tgamma(2.0 * a) * mellin_b2(xi, sp);
}

// coth(pi (xi + i/p)) without overflow
inline cplx coth_pi_shift(double xi, double p)
{
    cplx z = pi * cplx(xi, 1.0 / p);
    if (xi >= 0.0) {
        cplx e = std::exp(-2.0 * z);
        return (1.0 + e) / (1.0 - e);
    }
    cplx e = std::exp(2.0 * z);
    return -(1.0 + e) / (1.0 - e);
}

// g(-inf)(1+d)/2 + g(+inf)(1-d)/2 with d = coth(pi(xi + i/p))
inline cplx loop_function(cplx g_minus, cplx g_plus, double xi, double p)
{
    if (!(p > 1.0))
        fail(errc::domain, "loop_function requires p > 1");
    if (std::isinf(xi))
        return xi > 0.0 ? g_minus : g_plus;
    cplx d = coth_pi_shift(xi, p);
    return 0.5 * (g_minus * (1.0 + d) + g_plus * (1.0 - d));
}

// sin(pi(a - i xi)) / sin(pi(b - i xi)) with the dominant exponential factored out
inline cplx sin_ratio(double a, double b, double xi)
{
    cplx ea = std::exp(I * pi * a), eb = std::exp(I * pi * b);
    cplx num, den;
    if (xi >= 0.0) {
        double q = std::exp(-2.0 * pi * xi);
        num = ea - q / ea;
        den = eb - q / eb;
    } else {
        double q = std::exp(2.0 * pi * xi);
        num = ea * q - 1.0 / ea;
        den = eb * q - 1.0 / eb;
    }
    if (std::abs(den) < 1e-13)
        fail(errc::pole, "sin_ratio: vanishing denominator");
    return num / den;
}

inline double sin_ratio_modulus(double a, double b, double xi)
{
    if (std::abs(xi) <= 50.0) {
        double ch = std::cosh(2.0 * pi * xi);
        double den = ch - std::cos(2.0 * pi * b);
        if (!(den > 1e-300))
            fail(errc::pole, "sin_ratio_modulus: degenerate denominator");
        return std::sqrt((ch - std::cos(2.0 * pi * a)) / den);
    }
    return std::abs(sin_ratio(a, b, xi));
}

// e^{i pi nu} sin(pi(1/p + nu - i xi)) / sin(pi(1/p - i xi))
inline cplx c1p_inf(double xi, const SpectralParams& sp)
{
    if (std::isinf(xi))
        return xi > 0.0 ? wh_c1_limit_minus(sp) : wh_c1_limit_plus(sp);
    const double nu = sp.nu();
    return std::exp(I * pi * nu) * sin_ratio(sp.inv_p() + nu, sp.inv_p(), xi);
}

// e^{-i pi alpha} e^{i pi nu'} sin(pi(1/p + nu' - i xi)) / sin(pi(1/p - i xi))
inline cplx c2p_inf(double xi, const SpectralParams& sp)
{
    if (std::isinf(xi))
        return xi > 0.0 ? wh_c2_limit_minus(sp) : wh_c2_limit_plus(sp);
    const double nup = sp.nu_prime();
    return std::exp(-I * pi * sp.alpha()) * std::exp(I * pi * nup) *
           sin_ratio(sp.inv_p() + nup, sp.inv_p(), xi);
}

// |Mellin transform of K_{gamma,rho} at y - B(rho + 1/p' + i y, gamma)/Gamma(gamma)|
inline double mellin_symbol_residual(double gamma, double rho, double y, double p)
{
    if (!(gamma > 0.0))
        fail(errc::domain, "mellin_symbol_residual requires gamma > 0");
    if (!(p > 1.0))
        fail(errc::domain, "mellin_symbol_residual requires p > 1");
    if (!(rho > 1.0 / p - 1.0))
        fail(errc::domain, "mellin_symbol_residual requires rho > 1/p - 1");
    const double kappa = rho + 1.0 - 1.0 / p;
    // t = 1 + w, w = e^v - 1: integrand (1 - e^{-v})^{gamma-1} e^{-v(kappa + i y)}
    auto re = [&](double v) {
        return std::pow(-std::expm1(-v), gamma - 1.0) * std::exp(-kappa * v) * std::cos(y * v);
    };
    auto im = [&](double v) {
        return -std::pow(-std::expm1(-v), gamma - 1.0) * std::exp(-kappa * v) * std::sin(y * v);
    };
    auto guard = [](auto f) {
        return [f](double v) { return v > 0.0 ? f(v) : 0.0; };
    };
    cplx val{quad::ts(guard(re), 0.0, 1.0, 1e-13, "mellin head (re)", 1e-14).value,
             quad::ts(guard(im), 0.0, 1.0, 1e-13, "mellin head (im)", 1e-14).value};
    // tail beyond V is below max(1, (1-e^{-1})^{gamma-1}) e^{-kappa V} / kappa
    double cst = std::max(1.0, std::pow(1.0 - std::exp(-1.0), gamma - 1.0));
    double V = 1.0 + std::log(cst / (kappa * 1e-14)) / kappa;
    // equal panels: a sliver at the end stalls the Kronrod driver
    double width = std::max(0.5, std::min(2.0, pi / std::max(std::abs(y), 1e-300)));
    int panels = std::max(1, int(std::ceil((V - 1.0) / width)));
    double step = (V - 1.0) / panels;
    for (int i = 0; i < panels; ++i) {
        double a = 1.0 + i * step, b = a + step;
        val += cplx(quad::gk(re, a, b, 1e-13, "mellin tail (re)", 1e-15).value,
                    quad::gk(im, a, b, 1e-13, "mellin tail (im)", 1e-15).value);
    }
    cplx exact = complex_beta(cplx(kappa, y), gamma) / std::tgamma(gamma);
    return std::abs(val / std::tgamma(gamma) - exact);
}

} // namespace whml
