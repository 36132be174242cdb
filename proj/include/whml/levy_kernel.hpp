#pragma once

// Jump kernel m(y) of the symbol (1+xi^2)^alpha, its boundary potential and
// the delta-image functions of the one-sided factors.

#include <cmath>
#include <complex>

#include "error.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace whml {

struct KernelParams {
    double alpha;

    explicit KernelParams(double a) : alpha(a)
    {
        if (!(a > 0.0 && a < 1.0))
            fail(errc::domain, "kernel alpha must lie in (0,1)");
    }
};

enum class DeltaMode { A_MINUS_DELTA, A_EQ_DELTA, A_EQ_DELTAPRIME_MINUS_DELTA };
enum class PotentialMode { A_MINUS, A_EQ };

// alpha/Gamma(1-alpha) * 2^{1/2+alpha}/sqrt(pi)
inline double kernel_prefactor(const KernelParams& k)
{
    return k.alpha / std::tgamma(1.0 - k.alpha) * std::pow(2.0, 0.5 + k.alpha) / std::sqrt(pi);
}

inline double kernel_m(double y, const KernelParams& k)
{
    double r = std::abs(y);
    if (!(r > 0.0))
        fail(errc::singular_point, "kernel_m is singular at y = 0");
    if (r > 700.0)
        return 0.0;
    return kernel_prefactor(k) * std::pow(r, -0.5 - k.alpha) * bessel_k(0.5 + k.alpha, r);
}

// heat-kernel subordination integral, in the variable u = log s
inline double kernel_m_oracle(double y, const KernelParams& k)
{
    double r = std::abs(y);
    if (!(r > 0.0))
        fail(errc::singular_point, "kernel_m_oracle is singular at y = 0");
    const double a = k.alpha;
    const double c = 0.5 + a;
    auto logg = [&](double u) { return -c * u - std::exp(u) - 0.25 * r * r * std::exp(-u); };
    double sstar = 0.5 * (-c + std::sqrt(c * c + r * r));
    double ustar = std::log(sstar);
    double lmax = logg(ustar);
    double lo = ustar, hi = ustar;
    while (logg(lo) > lmax - 60.0)
        lo -= 0.5;
    while (logg(hi) > lmax - 60.0)
        hi += 0.5;
    auto f = [&](double u) { return std::exp(logg(u) - lmax); };
    auto q = quad::gk(f, lo, hi, 1e-14, "kernel_m_oracle");
    return a / std::tgamma(1.0 - a) / std::sqrt(4.0 * pi) * std::exp(lmax) * q.value;
}

// int_x^infty m(y) dy
inline double kernel_tail(double x, const KernelParams& k)
{
    if (!(x > 0.0))
        fail(errc::domain, "kernel_tail requires x > 0");
    auto m = [&](double y) { return kernel_m(y, k); };
    double total = 0.0;
    double start = x;
    if (x < 1.0) {
        auto g = [&](double u) {
            double y = std::exp(u);
            return kernel_m(y, k) * y;
        };
        total += quad::gk(g, std::log(x), 0.0, 1e-13, "kernel_tail").value;
        start = 1.0;
    }
    // m(y) e^y is decreasing, so the dropped part is below m(start + 60) e^{-...}
    total += quad::gk(m, start, start + 60.0, 1e-13, "kernel_tail", 1e-300).value;
    return total;
}

// r_+ A(chi_{R_-})(x) = -int_0^infty m(x + tau) dtau
inline double potential_full(double x, const KernelParams& k)
{
    if (!(x > 0.0))
        fail(errc::domain, "potential_full requires x > 0");
    return -kernel_tail(x, k);
}

// |(1+xi^2)^alpha - 1 - int_R (1 - cos y xi) m(y) dy|
inline double symbol_identity_residual(double xi, const KernelParams& k)
{
    xi = std::abs(xi);
    if (xi == 0.0)
        return 0.0;
    const double tol = 1e-12;
    const double y0 = 1.0 / std::max(1.0, xi);
    auto inner = [&](double y) {
        // integrand is O(y^{1-2 alpha}); below 1e-80 it is far under any tolerance
        if (y < 1e-80)
            return 0.0;
        double s = std::sin(0.5 * y * xi);
        return 2.0 * s * s * kernel_m(y, k);
    };
    auto outer = [&](double y) { return (1.0 - std::cos(y * xi)) * kernel_m(y, k); };
    double lhs = std::pow(1.0 + xi * xi, k.alpha) - 1.0;
    double scale = std::max(1.0, lhs);
    // tail cut where 4 m(Y) < scale * tol / 10
    double Y = 2.0;
    while (4.0 * kernel_m(Y, k) > 0.1 * tol * scale)
        Y += 2.0;
    double in = quad::ts(inner, 0.0, y0, tol, "symbol_identity inner", 1e-13 * scale).value;
    double out = 0.0;
    // panels of a few periods keep the Kronrod estimate honest
    double period = 2.0 * pi / xi;
    int panels = std::max(1, int(std::ceil((Y - y0) / std::max(1.0, 4.0 * period))));
    double step = (Y - y0) / panels;
    for (int i = 0; i < panels; ++i)
        out += quad::gk(outer, y0 + i * step, y0 + (i + 1) * step, tol, "symbol_identity outer", 1e-14 * scale)
                   .value;
    return std::abs(lhs - 2.0 * (in + out));
}

// |(1+x)^alpha - 1 - alpha/Gamma(1-alpha) int_0^infty (1 - e^{-xs}) e^{-s} s^{-alpha-1} ds|
inline double bernstein_residual(double x, const KernelParams& k)
{
    if (!(x >= 0.0))
        fail(errc::domain, "bernstein_residual requires x >= 0");
    if (x == 0.0)
        return 0.0;
    const double a = k.alpha;
    auto f = [&](double s) {
        if (s <= 0.0)
            return 0.0;
        return (-std::expm1(-x * s) / s) * std::exp(-s) * std::pow(s, -a);
    };
    double in = quad::ts(f, 0.0, 1.0, 1e-14, "bernstein inner").value;
    double out = quad::gk(f, 1.0, 80.0, 1e-14, "bernstein outer", 1e-300).value;
    double rhs = a / std::tgamma(1.0 - a) * (in + out);
    return std::abs(std::pow(1.0 + x, a) - 1.0 - rhs);
}

// C_alpha = -i alpha 2^{2 alpha} / Gamma(1 - alpha)
inline cplx c_alpha(const KernelParams& k)
{
    return -I * k.alpha * std::pow(2.0, 2.0 * k.alpha) / std::tgamma(1.0 - k.alpha);
}

inline cplx delta_image(double x, const KernelParams& k, DeltaMode mode)
{
    if (!(x > 0.0))
        fail(errc::domain, "delta_image requires x > 0");
    const double a = k.alpha;
    const cplx ca = c_alpha(k);
    switch (mode) {
    case DeltaMode::A_MINUS_DELTA:
        return ca * std::exp(-x) * kummer_u(a + 1.0, 2.0 * a + 1.0, 2.0 * x);
    case DeltaMode::A_EQ_DELTA:
        return 0.5 * I * ca * std::exp(-x) * kummer_u(a + 1.0, 2.0 * a, 2.0 * x);
    case DeltaMode::A_EQ_DELTAPRIME_MINUS_DELTA:
        return -I * ca * std::exp(-x) * kummer_u(a + 1.0, 2.0 * a + 1.0, 2.0 * x);
    }
    fail(errc::internal, "delta_image: unknown mode");
}

inline cplx potential_aminus(double x, const KernelParams& k, PotentialMode mode)
{
    if (!(x > 0.0))
        fail(errc::domain, "potential_aminus requires x > 0");
    const double a = k.alpha;
    if (mode == PotentialMode::A_MINUS && !(a < 0.5))
        fail(errc::domain, "potential_aminus A_MINUS requires alpha < 1/2");
    const double b = mode == PotentialMode::A_MINUS ? 2.0 * a + 1.0 : 2.0 * a;
    auto f = [&](double t) { return std::exp(-t) * kummer_u(a + 1.0, b, 2.0 * t); };
    double total = 0.0;
    double start = x;
    if (x < 1.0) {
        auto g = [&](double u) {
            double t = std::exp(u);
            return f(t) * t;
        };
        total += quad::gk(g, std::log(x), 0.0, 1e-13, "potential_aminus").value;
        start = 1.0;
    }
    // e^{-t} U(a+1, b, 2t) <= e^{-t} U(a+1, b, 2 start) beyond start; e^{-45} is negligible
    total += quad::gk(f, start, start + 45.0, 1e-13, "potential_aminus", 1e-300).value;
    cplx pref = mode == PotentialMode::A_MINUS ? c_alpha(k) : 0.5 * I * c_alpha(k);
    return pref * total;
}

// Gamma(2a - lambda) Gamma(1 + lambda) sin(pi(a - lambda)) / pi
inline double frac_laplacian_constant(double lambda, const KernelParams& k)
{
    const double a = k.alpha;
    if (!(lambda > -1.0 && lambda < 2.0 * a))
        fail(errc::domain, "frac_laplacian_constant requires -1 < lambda < 2 alpha");
    return std::tgamma(2.0 * a - lambda) * std::tgamma(1.0 + lambda) * std::sin(pi * (a - lambda)) /
           pi;
}

// 2^{2a-1} Gamma(a + 1/2) / (sqrt(pi) Gamma(1 - a))
inline double killing_coefficient(const KernelParams& k)
{
    const double a = k.alpha;
    if (!(a > 0.5 && a < 1.0))
        fail(errc::domain, "killing_coefficient requires 1/2 < alpha < 1");
    return std::pow(2.0, 2.0 * a - 1.0) * std::tgamma(a + 0.5) / (std::sqrt(pi) * std::tgamma(1.0 - a));
}

// c_{1,a} x^{2a} int_0^inf (x + tau)^{-1-2a} d tau by quadrature, tau = t/(1-t)
inline double killing_tail_quadrature(double x, const KernelParams& k)
{
    const double a = k.alpha;
    if (!(a > 0.5 && a < 1.0))
        fail(errc::domain, "killing_tail_quadrature requires 1/2 < alpha < 1");
    if (!(x > 0.0))
        fail(errc::domain, "killing_tail_quadrature requires x > 0");
    const double c1 = -std::pow(2.0, 2.0 * a) * std::tgamma(a + 0.5) / (std::sqrt(pi) * std::tgamma(-a));
    auto f = [&](double t) {
        if (t >= 1.0)
            return 0.0;
        double om = 1.0 - t;
        return std::pow(x * om + t, -1.0 - 2.0 * a) * std::pow(om, 2.0 * a - 1.0);
    };
    double v = quad::ts(f, 0.0, 1.0, 1e-14, "killing_tail_quadrature").value;
    return c1 * std::pow(x, 2.0 * a) * v;
}

} // namespace whml
