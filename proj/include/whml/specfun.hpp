#pragma once

// Complex gamma family, modified Bessel K and Tricomi U on the real line.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace whml {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr cplx I{0.0, 1.0};

// arg z in (-pi, pi]; the negative real axis (either signed zero) maps to +pi
inline double principal_arg(cplx z)
{
    if (z.imag() == 0.0)
        return z.real() < 0.0 ? pi : 0.0;
    return std::atan2(z.imag(), z.real());
}

inline cplx principal_log(cplx z) { return {std::log(std::abs(z)), principal_arg(z)}; }

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// z^g := exp(g log z)
inline cplx principal_power(cplx z, double g)
{
    if (!is_finite(z) || !std::isfinite(g))
        fail(errc::domain, "principal_power: non-finite input");
    if (z == cplx(0.0)) {
        if (g > 0.0)
            return 0.0;
        fail(errc::domain, "principal_power: 0 raised to a non-positive power");
    }
    return std::exp(g * principal_log(z));
}

namespace detail {

inline bool is_nonpositive_integer(cplx z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Lanczos g = 7, n = 9
inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline cplx lanczos_series(cplx zm1)
{
    cplx x = lanczos_c[0];
    for (int i = 1; i < 9; ++i)
        x += lanczos_c[i] / (zm1 + double(i));
    return x;
}

// log sin(pi z), branch irrelevant (only ever exponentiated)
inline cplx log_sin_pi(cplx z)
{
    cplx w = pi * z;
    if (std::abs(w.imag()) < 20.0)
        return std::log(std::sin(w));
    if (w.imag() > 0.0) // sin w = e^{-iw}(1 - e^{2iw}) i/2
        return -I * w + std::log(1.0 - std::exp(2.0 * I * w)) + std::log(0.5 * I);
    return I * w + std::log(1.0 - std::exp(-2.0 * I * w)) - std::log(2.0 * I);
}

inline cplx cot_pi(cplx z)
{
    cplx w = pi * z;
    if (std::abs(w.imag()) < 20.0)
        return std::cos(w) / std::sin(w);
    if (w.imag() > 0.0) {
        cplx e = std::exp(2.0 * I * w);
        return I * (e + 1.0) / (e - 1.0);
    }
    cplx e = std::exp(-2.0 * I * w);
    return -I * (1.0 + e) / (1.0 - e);
}

inline cplx log1p_c(cplx w)
{
    cplx u = 1.0 + w;
    if (u == cplx(1.0))
        return w;
    return std::log(u) * w / (u - 1.0);
}

// B_{2k}/(2k(2k-1)), k = 1..8
inline constexpr std::array<double, 8> stirling_c = {
    1.0 / 12.0,          -1.0 / 360.0,       1.0 / 1260.0,      -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,  1.0 / 156.0,       -3617.0 / 122400.0};

// B_{2k}/(2k), k = 1..7
inline constexpr std::array<double, 7> digamma_c = {
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};

} // namespace detail

inline cplx complex_gamma(cplx z);

// log Gamma(z) modulo 2 pi i
inline cplx log_gamma(cplx z)
{
    if (!is_finite(z))
        fail(errc::domain, "log_gamma: non-finite argument");
    if (detail::is_nonpositive_integer(z))
        fail(errc::pole, "log_gamma at a non-positive integer");
    if (z.real() < 0.5)
        return std::log(pi) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    cplx zm1 = z - 1.0;
    cplx t = zm1 + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (zm1 + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_series(zm1));
}

inline cplx complex_gamma(cplx z)
{
    if (!is_finite(z))
        fail(errc::domain, "complex_gamma: non-finite argument");
    if (detail::is_nonpositive_integer(z))
        fail(errc::pole, "complex_gamma at a non-positive integer");
    if (std::abs(z.real()) > 170.0)
        fail(errc::overflow, "complex_gamma: |Re z| > 170");
    if (std::abs(z.imag()) > 100.0)
        return std::exp(log_gamma(z));
    if (z.real() < 0.5)
        return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
    cplx zm1 = z - 1.0;
    cplx t = zm1 + detail::lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::exp((zm1 + 0.5) * std::log(t) - t) *
           detail::lanczos_series(zm1);
}

// log Gamma(z+a) - log Gamma(z), stable for large |z| with Re z > 0
inline cplx log_gamma_ratio(cplx z, cplx a)
{
    if (std::abs(z) < 20.0 || z.real() <= 0.0)
        return log_gamma(z + a) - log_gamma(z);
    cplx za = z + a;
    cplx r = (z - 0.5) * detail::log1p_c(a / z) + a * std::log(za) - a;
    cplx iz = 1.0 / z, iza = 1.0 / za;
    cplx pz = iz, pza = iza;
    cplx iz2 = iz * iz, iza2 = iza * iza;
    for (double c : detail::stirling_c) {
        r += c * (pza - pz);
        pz *= iz2;
        pza *= iza2;
    }
    return r;
}

inline cplx complex_digamma(cplx z)
{
    if (!is_finite(z))
        fail(errc::domain, "complex_digamma: non-finite argument");
    if (detail::is_nonpositive_integer(z))
        fail(errc::pole, "complex_digamma at a non-positive integer");
    if (z.real() < 0.5)
        return complex_digamma(1.0 - z) - pi * detail::cot_pi(z);
    cplx acc = 0.0;
    while (std::abs(z) < 12.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    cplx iz2 = 1.0 / (z * z);
    cplx p = iz2;
    cplx s = std::log(z) - 0.5 / z;
    for (double c : detail::digamma_c) {
        s -= c * p;
        p *= iz2;
    }
    return acc + s;
}

// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), evaluated in log space
inline cplx complex_beta(cplx a, cplx b)
{
    if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b) ||
        detail::is_nonpositive_integer(a + b))
        fail(errc::pole, "complex_beta: gamma pole in a, b or a+b");
    if (std::abs(b) > std::abs(a))
        std::swap(a, b);
    return std::exp(log_gamma(b) - log_gamma_ratio(a, b));
}

inline double real_digamma(double x)
{
    if (detail::is_nonpositive_integer(x))
        fail(errc::pole, "digamma at a non-positive integer");
    if (x < 0.5)
        return real_digamma(1.0 - x) - pi / std::tan(pi * x);
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double ix2 = 1.0 / (x * x), p = ix2;
    double s = std::log(x) - 0.5 / x;
    for (double c : detail::digamma_c) {
        s -= c * p;
        p *= ix2;
    }
    return acc + s;
}

// 1/Gamma(x), zero at the poles
inline double rgamma(double x)
{
    if (detail::is_nonpositive_integer(x))
        return 0.0;
    return 1.0 / std::tgamma(x);
}

namespace detail {

// Temme's Gamma_1(mu), Gamma_2(mu) for |mu| <= 1/2
inline void temme_gammas(double mu, double& g1, double& g2, double& gp, double& gm)
{
    gp = rgamma(1.0 + mu);
    gm = rgamma(1.0 - mu);
    g2 = 0.5 * (gm + gp);
    if (std::abs(mu) < 1e-3) {
        // 1/Gamma(1+x) = 1 + gamma x + c3 x^2 + c4 x^3 + ...
        double m2 = mu * mu;
        g1 = -(euler_gamma - 0.0420026350340952 * m2 - 0.0421977345555443 * m2 * m2);
    } else {
        g1 = (gm - gp) / (2.0 * mu);
    }
}

// K_mu(x), K_{mu+1}(x) for |mu| <= 1/2
inline void bessel_k_pair(double mu, double x, double& kmu, double& kmu1)
{
    constexpr double eps = 1e-16;
    const double mu2 = mu * mu;
    if (x < 2.0) {
        double x2 = 0.5 * x;
        double pimu = pi * mu;
        double fact = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
        double d = -std::log(x2);
        double e = mu * d;
        double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;
        double g1, g2, gp, gm;
        temme_gammas(mu, g1, g2, gp, gm);
        double ff = fact * (g1 * std::cosh(e) + g2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / gp;
        double q = 0.5 / (e * gm);
        double c = 1.0;
        d = x2 * x2;
        double sum1 = p;
        for (int i = 1; i < 500; ++i) {
            ff = (i * ff + p + q) / (i * double(i) - mu2);
            c *= d / i;
            p /= (i - mu);
            q /= (i + mu);
            double del = c * ff;
            sum += del;
            sum1 += c * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * eps)
                break;
        }
        kmu = sum;
        kmu1 = sum1 * 2.0 / x;
        return;
    }
    // Steed's continued fraction
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double a1 = 0.25 - mu2;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps)
            break;
    }
    h = a1 * h;
    kmu = std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
    kmu1 = kmu * (mu + x + 0.5 - h) / x;
}

} // namespace detail

// Modified Bessel function of the second kind, |nu| <= 2, x > 0
inline double bessel_k(double nu, double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        fail(errc::domain, "bessel_k requires x > 0");
    nu = std::abs(nu);
    if (!(nu <= 2.0))
        fail(errc::domain, "bessel_k supports |nu| <= 2");
    int nl = int(nu + 0.5);
    double mu = nu - nl;
    double kmu, kmu1;
    detail::bessel_k_pair(mu, x, kmu, kmu1);
    for (int i = 1; i <= nl; ++i) {
        double next = (mu + i) * (2.0 / x) * kmu1 + kmu;
        kmu = kmu1;
        kmu1 = next;
    }
    return kmu;
}

namespace detail {

inline double hyp1f1_series(double a, double b, double x)
{
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 1000; ++k) {
        term *= (a + k) / (b + k) * x / (k + 1.0);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum))
            break;
    }
    return sum;
}

inline double kummer_u_two_series(double a, double b, double x)
{
    double t1 = std::tgamma(1.0 - b) * rgamma(a - b + 1.0) * hyp1f1_series(a, b, x);
    double t2 = std::tgamma(b - 1.0) * rgamma(a) * std::pow(x, 1.0 - b) *
                hyp1f1_series(a - b + 1.0, 2.0 - b, x);
    return t1 + t2;
}

// b = n + 1 with n in {0, 1}
inline double kummer_u_log(double a, int n, double x)
{
    double b = n + 1.0;
    double poly = n == 1 ? rgamma(a) / x : 0.0;
    double rg = rgamma(a - n);
    if (rg == 0.0)
        return poly;
    double lx = std::log(x);
    double psi_a = real_digamma(a);
    double psi_1 = -euler_gamma;
    double psi_n = n == 0 ? psi_1 : 1.0 - euler_gamma;
    double coef = 1.0, s = 0.0;
    for (int r = 0; r < 1000; ++r) {
        if (r > 0) {
            coef *= (a + r - 1) / (b + r - 1) * x / r;
            psi_a += 1.0 / (a + r - 1);
            psi_1 += 1.0 / r;
            psi_n += 1.0 / (n + r);
        }
        double bracket = lx + psi_a - psi_1 - psi_n;
        s += coef * bracket;
        if (r > 2 && std::abs(coef) * (std::abs(bracket) + 1.0) <= 1e-17 * std::abs(s))
            break;
    }
    double sign = n == 0 ? -1.0 : 1.0; // (-1)^{n+1}/n!, n! = 1 here
    return sign * rg * s + poly;
}

inline double kummer_u_series(double a, double b, double x)
{
    if (b < 1.0) // U(a,b,x) = x^{1-b} U(a-b+1, 2-b, x)
        return std::pow(x, 1.0 - b) * kummer_u_series(a - b + 1.0, 2.0 - b, x);
    constexpr double band = 1e-6, step = 1e-4;
    for (int n = 1; n <= 2; ++n) {
        double off = b - n;
        if (std::abs(off) < band) {
            double u0 = kummer_u_log(a, n - 1, x);
            if (off == 0.0)
                return u0;
            double hs = off > 0 ? step : -step;
            double u1 = kummer_u_two_series(a, n + hs, x);
            return u0 + (u1 - u0) * (off / hs);
        }
    }
    return kummer_u_two_series(a, b, x);
}

// z^{-a} sum (a)_k (a-b+1)_k / k! (-z)^{-k}; returns false if the minimal term is too large
inline bool kummer_u_asymptotic(double a, double b, double z, double& out)
{
    double c = a - b + 1.0;
    double term = 1.0, sum = 1.0, prev = 1.0;
    for (int k = 0; k < 2000; ++k) {
        double next = term * (a + k) * (c + k) / ((k + 1.0) * (-z));
        if (next == 0.0) {
            out = sum * std::pow(z, -a);
            return true;
        }
        if (std::abs(next) > std::abs(prev) && k > 2)
            break;
        term = next;
        sum += term;
        prev = term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            out = sum * std::pow(z, -a);
            return true;
        }
    }
    out = sum * std::pow(z, -a);
    return std::abs(prev) < 1e-15 * std::abs(sum);
}

// integrate z w'' + (b - z) w' - a w = 0 backwards from the asymptotic zone
inline double kummer_u_ode(double a, double b, double x)
{
    double z = std::max(x, 40.0);
    double w = 0.0, dw = 0.0;
    for (;;) {
        double u1;
        if (kummer_u_asymptotic(a, b, z, w) && kummer_u_asymptotic(a + 1.0, b + 1.0, z, u1)) {
            dw = -a * u1;
            break;
        }
        z += 20.0;
        if (z > 2000.0)
            fail(errc::internal, "kummer_u: asymptotic start failed");
    }
    while (z > x) {
        double h = -std::min({2.0, 0.5 * z, z - x});
        double c0 = w, c1 = dw;
        double sw = c0 + c1 * h, sdw = c1;
        double hp = h; // h^{n+1}
        double scale = std::abs(w) + std::abs(dw * h);
        int small = 0;
        for (int n = 0; n < 400; ++n) {
            double c2 = ((n + a) * c0 - (n + 1.0) * (n + b - z) * c1) / (z * (n + 1.0) * (n + 2.0));
            sdw += (n + 2.0) * c2 * hp;
            hp *= h;
            double t = c2 * hp;
            sw += t;
            c0 = c1;
            c1 = c2;
            if (std::abs(t) < 1e-18 * scale) {
                if (++small >= 3)
                    break;
            } else {
                small = 0;
            }
        }
        w = sw;
        dw = sdw;
        z += h;
    }
    return w;
}

} // namespace detail

// Tricomi confluent hypergeometric function U(a,b,x), a > 0, 0 < b < 3, x > 0
inline double kummer_u(double a, double b, double x)
{
    if (!(a > 0.0) || !(b > 0.0) || !(b < 3.0) || !(x > 0.0) || !std::isfinite(a) ||
        !std::isfinite(x))
        fail(errc::domain, "kummer_u requires a > 0, 0 < b < 3, x > 0");
    if (x <= 2.0)
        return detail::kummer_u_series(a, b, x);
    return detail::kummer_u_ode(a, b, x);
}

} // namespace whml
