#pragma once

// The xi-dependent equation T_s = T_B, its xi = 0 root alpha_c, and grid scans of
// the inequalities that exclude every other solution.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "specfun.hpp"
#include "symbols.hpp"

namespace whml {

// m = 1 convention throughout
struct TranscendParams {
    double alpha;
    double tau;
    double xi;
};

inline cplx t_s(const TranscendParams& tp)
{
    const double a = tp.alpha, tau = tp.tau;
    const double b = 1.0 + 2.0 * a - tau;
    if (tp.xi == 0.0 && b == std::round(b))
        fail(errc::pole, "t_s: denominator vanishes (xi = 0, tau - 2 alpha integer)");
    return sin_ratio(1.0 + a - tau, b, tp.xi);
}

// same ratio in (p, s, m) form: sin pi(1/p + nu - i xi) / sin pi(1/p + nu' - i xi)
inline cplx t_s(double xi, const SpectralParams& sp)
{
    return sin_ratio(sp.inv_p() + sp.nu(), sp.inv_p() + sp.nu_prime(), xi);
}

inline cplx t_b(const TranscendParams& tp)
{
    const double a = tp.alpha;
    const double sg = tp.tau + 1.0 - 2.0 * a;
    if (!(sg > 0.0))
        fail(errc::pole, "t_b requires tau + 1 - 2 alpha > 0");
    return std::sin(pi * a) / pi * std::tgamma(2.0 * a) *
           std::exp(-log_gamma_ratio(cplx(sg, tp.xi), 2.0 * a));
}

// Gamma(2a - tau) Gamma(tau + 1) sin pi(a - tau)
inline double te_lhs(double tau, double alpha)
{
    double g = 2.0 * alpha - tau;
    if (detail::is_nonpositive_integer(g))
        fail(errc::pole, "te_lhs: Gamma pole at 2 alpha - tau");
    return std::tgamma(g) * std::tgamma(tau + 1.0) * std::sin(pi * (alpha - tau));
}

inline double te_residual_zero(double tau, double alpha)
{
    return te_lhs(tau, alpha) - std::tgamma(2.0 * alpha) * std::sin(pi * alpha);
}

inline double alpha_c(double alpha, double tol = 1e-12)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(errc::domain, "alpha_c requires 0 < alpha < 1");
    if (!(tol >= 1e-12))
        fail(errc::domain, "alpha_c requires tol >= 1e-12");
    const double left = alpha < 0.5 ? 1.0 : 2.0 * alpha;
    const double right = 1.0 + alpha;
    double delta = 1e-3, lo = 0, hi = 0, flo = 0, fhi = 0;
    for (;; delta *= 0.5) {
        if (delta < 1e-15)
            fail(errc::internal, "alpha_c: no sign change in the bracket");
        lo = left + delta;
        hi = right - delta;
        flo = te_residual_zero(lo, alpha);
        fhi = te_residual_zero(hi, alpha);
        if ((flo > 0.0) != (fhi > 0.0))
            break;
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        double fm = te_residual_zero(mid, alpha);
        if (fm == 0.0)
            return mid - 1.0;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    // one secant step inside the final bracket
    double root = lo - flo * (hi - lo) / (fhi - flo);
    if (!(root >= lo && root <= hi))
        root = 0.5 * (lo + hi);
    return root - 1.0;
}

// |sum of arctan differences (N terms plus tail) - arg B(sigma + i xi, gamma)| modulo 2 pi
inline double arg_beta_series_residual(double sigma, double gamma, double xi, long N)
{
    if (!(sigma > 0.0 && gamma > 0.0 && xi >= 0.0))
        fail(errc::domain, "arg_beta_series_residual requires sigma, gamma > 0 and xi >= 0");
    if (N < 1)
        fail(errc::domain, "arg_beta_series_residual requires N >= 1");
    double sum = 0.0, comp = 0.0;
    for (long n = N - 1; n >= 0; --n) { // smallest terms first
        double term = std::atan(xi / (sigma + gamma + n)) - std::atan(xi / (sigma + n));
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    auto F = [xi](double c, double x) {
        double u = c + x;
        return u * std::atan(xi / u) + 0.5 * xi * std::log(u * u + xi * xi);
    };
    const double X = N - 0.5;
    sum += -(F(sigma + gamma, X) - F(sigma, X));
    double ref = principal_arg(complex_beta(cplx(sigma, xi), gamma));
    double d = std::remainder(sum - ref, 2.0 * pi);
    return std::abs(d);
}

enum class TeRegion { TE2, TE3, TE4, TE6, TE7, TE8 };

inline const char* te_region_name(TeRegion r)
{
    switch (r) {
    case TeRegion::TE2: return "TE2";
    case TeRegion::TE3: return "TE3";
    case TeRegion::TE4: return "TE4";
    case TeRegion::TE6: return "TE6";
    case TeRegion::TE7: return "TE7";
    case TeRegion::TE8: return "TE8";
    }
    return "?";
}

namespace detail {

// n samples of an interval honouring which ends are closed
inline std::vector<double> axis(double lo, double hi, bool closed_lo, bool closed_hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        double f;
        if (closed_lo && closed_hi)
            f = n == 1 ? 0.5 : double(i) / (n - 1);
        else if (closed_lo)
            f = double(i) / n;
        else if (closed_hi)
            f = double(i + 1) / n;
        else
            f = (i + 0.5) / n;
        v[i] = lo + f * (hi - lo);
    }
    return v;
}

struct ScanBest {
    double margin = std::numeric_limits<double>::infinity();
    double alpha = 0, tau = 0, xi = 0;
    void offer(double m, double a, double t, double x)
    {
        if (m < margin) {
            margin = m;
            alpha = a;
            tau = t;
            xi = x;
        }
    }
};

inline std::string point_text(double a, double t, double x)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "alpha=%.6g,tau=%.6g,xi=%.6g", a, t, x);
    return buf;
}

// lemma inequality as a signed margin (positive means it holds)
inline double te_margin(TeRegion r, double a, double tau, double xi)
{
    TranscendParams tp{a, tau, xi};
    cplx ts = t_s(tp), tb = t_b(tp);
    switch (r) {
    case TeRegion::TE2:
        return std::min(std::abs(ts) - 2.0 / pi, 2.0 / pi - std::abs(tb));
    case TeRegion::TE3:
        return std::min(principal_arg(tb) + 4.0 * a * xi, -4.0 * a * xi - principal_arg(ts));
    case TeRegion::TE6:
        return std::abs(ts) - std::abs(tb);
    case TeRegion::TE7: {
        double as = principal_arg(ts), ab = principal_arg(tb);
        // arg t_s <= -pi/2 is not strict (equality at alpha = 1/2, tau = 3/2); allow roundoff only
        if (-pi / 2.0 - as < -1e-12)
            return -pi / 2.0 - as;
        return std::min({as + pi, ab + pi / 2.0, -ab, ab - as});
    }
    case TeRegion::TE4:
    case TeRegion::TE8:
        return std::abs(principal_arg(ts / tb));
    }
    return 0.0;
}

} // namespace detail

inline VerificationReport inequality_scan(TeRegion region, int density)
{
    if (density < 20)
        fail(errc::domain, "inequality_scan requires density >= 20");
    const int n = density;
    std::vector<double> alphas, xis;
    // tau axis depends on alpha; the bool pairs mark closed ends
    switch (region) {
    case TeRegion::TE2:
        alphas = detail::axis(0.0, 0.5, false, false, n);
        xis = detail::axis(0.25, 10.0, true, true, n);
        break;
    case TeRegion::TE3:
        alphas = detail::axis(0.0, 0.5, false, false, n);
        xis = detail::axis(0.0, 0.25, false, false, n);
        break;
    case TeRegion::TE4:
        alphas = detail::axis(0.0, 0.5, false, false, n);
        xis = detail::axis(0.0, 10.0, false, true, n);
        break;
    case TeRegion::TE6:
        alphas = detail::axis(0.0, 1.0, false, false, n);
        xis = detail::axis(0.25, 10.0, true, true, n);
        break;
    case TeRegion::TE7:
        alphas = detail::axis(0.5, 1.0, true, false, n);
        xis = detail::axis(0.0, 0.25, false, false, n);
        break;
    case TeRegion::TE8:
        alphas = detail::axis(0.0, 1.0, false, false, n);
        xis = detail::axis(0.0, 10.0, false, true, n);
        break;
    }
    auto taus_for = [&](double a) -> std::vector<double> {
        switch (region) {
        case TeRegion::TE2: return detail::axis(a, 1.0, true, false, n);
        case TeRegion::TE3: {
            auto lo = detail::axis(a, 1.0, true, false, (n + 1) / 2);
            auto hi = detail::axis(1.0 + a, 2.0, true, false, n / 2);
            lo.insert(lo.end(), hi.begin(), hi.end());
            return lo;
        }
        case TeRegion::TE4: return detail::axis(0.0, a, false, false, n);
        case TeRegion::TE6:
        case TeRegion::TE7: return detail::axis(1.0 + a, 2.0, true, false, n);
        case TeRegion::TE8: return detail::axis(1.0, 1.0 + a, false, false, n);
        }
        return {};
    };
    std::vector<detail::ScanBest> best(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t i) {
        double a = alphas[i];
        for (double tau : taus_for(a))
            for (double xi : xis)
                best[i].offer(detail::te_margin(region, a, tau, xi), a, tau, xi);
    });
    detail::ScanBest all;
    for (const auto& b : best)
        all.offer(b.margin, b.alpha, b.tau, b.xi);
    VerificationReport rep;
    rep.name = te_region_name(region);
    rep.grid = std::to_string(n) + "^3 (alpha x tau x xi)";
    rep.min_margin = all.margin;
    rep.argmin = detail::point_text(all.alpha, all.tau, all.xi);
    rep.tolerance = 0.0;
    rep.judge();
    return rep;
}

struct CertificatePoint {
    double alpha, tau, xi, value;
};

// min |t_s - t_b| over a (tau, xi) grid at fixed alpha; xi grid starts at 0 when include_zero
inline CertificatePoint te_grid_min(double a, const std::vector<double>& taus,
                                    const std::vector<double>& xis)
{
    CertificatePoint best{a, 0, 0, std::numeric_limits<double>::infinity()};
    for (double tau : taus)
        for (double xi : xis) {
            double v;
            try {
                TranscendParams tp{a, tau, xi};
                v = std::abs(t_s(tp) - t_b(tp));
            } catch (const error& e) {
                if (e.code() != errc::pole)
                    throw;
                continue; // t_s has a pole here, so it cannot equal the finite t_b
            }
            if (v < best.value)
                best = {a, tau, xi, v};
        }
    return best;
}

enum class CertRegime { LOW, HIGH };

inline VerificationReport no_solution_certificate(CertRegime regime, int density,
                                                  std::vector<double> high_alphas = {0.3, 0.5, 0.75})
{
    if (density < 20)
        fail(errc::domain, "no_solution_certificate requires density >= 20");
    const int n = density;
    VerificationReport rep;
    if (regime == CertRegime::LOW) {
        auto alphas = detail::axis(0.0, 0.5, false, false, n);
        auto taus = detail::axis(0.0, 1.0, false, false, n);
        auto xis = detail::axis(0.0, 10.0, true, true, n);
        std::vector<CertificatePoint> best(alphas.size());
        parallel_for(alphas.size(), [&](std::size_t i) { best[i] = te_grid_min(alphas[i], taus, xis); });
        CertificatePoint all = best[0];
        for (const auto& b : best)
            if (b.value < all.value)
                all = b;
        rep.name = "LOW";
        rep.grid = std::to_string(n) + "^3 (alpha in (0,1/2), tau in (0,1), xi in [0,10])";
        rep.min_margin = all.value;
        rep.argmin = detail::point_text(all.alpha, all.tau, all.xi);
        rep.tolerance = 1e-3;
        rep.judge();
        return rep;
    }
    auto taus = detail::axis(1.0, 2.0, false, false, n);
    auto xis = detail::axis(0.0, 5.0, true, true, n);
    const double dtau = 1.0 / n, dxi = 5.0 / (n - 1);
    std::vector<CertificatePoint> best(high_alphas.size());
    parallel_for(high_alphas.size(),
                 [&](std::size_t i) { best[i] = te_grid_min(high_alphas[i], taus, xis); });
    bool ok = true;
    double worst = 0.0;
    std::string where, notes;
    for (const auto& b : best) {
        double tc = 1.0 + alpha_c(b.alpha);
        // offset from the predicted root in cell units
        double off = std::max(std::abs(b.tau - tc) / dtau, b.xi / dxi);
        bool loc = off <= 1.0;
        ok = ok && loc;
        worst = std::max(worst, off);
        char buf[200];
        std::snprintf(buf, sizeof buf, "alpha=%.6g: min %.3e at tau=%.6g xi=%.6g, root tau=%.10g%s; ",
                      b.alpha, b.value, b.tau, b.xi, tc, loc ? "" : " (not localized)");
        notes += buf;
        if (where.empty() || !loc)
            where = detail::point_text(b.alpha, b.tau, b.xi);
    }
    rep.name = "HIGH";
    rep.grid = std::to_string(n) + "^2 (tau in (1,2), xi in [0,5]) per alpha";
    // offset of the argmin from (tau = 1 + alpha_c, xi = 0), in grid cells
    rep.min_margin = worst;
    rep.is_residual = true;
    rep.tolerance = 1.0;
    rep.argmin = where;
    rep.notes = notes;
    rep.pass = ok;
    return rep;
}

} // namespace whml
