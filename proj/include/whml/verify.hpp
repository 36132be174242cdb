#pragma once

// Verification suites: named identity cross-checks grouped by module.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <string>
#include <vector>

#include "classifier.hpp"
#include "contour.hpp"
#include "halfline.hpp"
#include "levy_kernel.hpp"
#include "report.hpp"
#include "symbols.hpp"
#include "transcendental.hpp"

namespace whml {

namespace detail {

inline VerificationReport residual_report(std::string name, std::string grid, double worst,
                                          std::string where, double tol)
{
    VerificationReport r;
    r.name = std::move(name);
    r.grid = std::move(grid);
    r.min_margin = worst;
    r.argmin = std::move(where);
    r.tolerance = tol;
    r.is_residual = true;
    r.judge();
    return r;
}

inline VerificationReport margin_report(std::string name, std::string grid, double margin,
                                        std::string where, double tol = 0.0)
{
    VerificationReport r;
    r.name = std::move(name);
    r.grid = std::move(grid);
    r.min_margin = margin;
    r.argmin = std::move(where);
    r.tolerance = tol;
    r.judge();
    return r;
}

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

inline const std::vector<double>& kernel_alphas()
{
    static const std::vector<double> v = {0.1, 0.25, 0.5, 0.75, 0.9};
    return v;
}

} // namespace detail

inline std::vector<VerificationReport> verify_kernel(int density = 40)
{
    std::vector<VerificationReport> out;
    const int n = std::max(density, 20);
    {
        double worst = 0.0;
        std::string where;
        for (double a : detail::kernel_alphas()) {
            KernelParams k(a);
            for (int i = 0; i < n; ++i) {
                double y = 1e-3 * std::pow(2e4, double(i) / (n - 1));
                double m = kernel_m(y, k), o = kernel_m_oracle(y, k);
                double e = std::abs(m - o) / m;
                if (e > worst) {
                    worst = e;
                    where = detail::fmt("alpha=%g,y=%.6g", a, y);
                }
            }
        }
        out.push_back(detail::residual_report("kernel_dual_route",
                                              std::to_string(n) + " log-spaced y in [1e-3,20] x 5 alpha",
                                              worst, where, 1e-8));
    }
    {
        double worst = 0.0;
        std::string where;
        for (double a : detail::kernel_alphas()) {
            KernelParams k(a);
            for (int i = 0; i < n; ++i) {
                double xi = 20.0 * i / (n - 1);
                double e = symbol_identity_residual(xi, k);
                if (e > worst) {
                    worst = e;
                    where = detail::fmt("alpha=%g,xi=%.6g", a, xi);
                }
            }
        }
        out.push_back(detail::residual_report("symbol_identity",
                                              std::to_string(n) + " xi in [0,20] x 5 alpha", worst,
                                              where, 1e-5));
    }
    {
        double worst = 0.0;
        std::string where;
        for (double a : detail::kernel_alphas())
            for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
                double e = bernstein_residual(x, KernelParams(a));
                if (e > worst) {
                    worst = e;
                    where = detail::fmt("alpha=%g,x=%g", a, x);
                }
            }
        out.push_back(detail::residual_report("bernstein", "5 x x 5 alpha", worst, where, 1e-9));
    }
    {
        double worst = 0.0;
        std::string where;
        for (double a : {0.6, 0.75, 0.9}) {
            KernelParams k(a);
            double c = killing_coefficient(k);
            double e = std::abs(c - killing_tail_quadrature(1.0, k)) / c;
            if (e >= worst) {
                worst = e;
                where = detail::fmt("alpha=%g", a);
            }
        }
        out.push_back(detail::residual_report("killing_coefficient", "alpha in {0.6,0.75,0.9}, x=1",
                                              worst, where, 1e-8));
    }
    {
        double margin = 1e300;
        std::string where;
        for (double a : detail::kernel_alphas())
            for (double x : {1e-4, 1e-2, 0.5, 2.0, 10.0}) {
                double v = -potential_full(x, KernelParams(a));
                if (v < margin) {
                    margin = v;
                    where = detail::fmt("alpha=%g,x=%g", a, x);
                }
            }
        out.push_back(detail::margin_report("potential_negative", "5 x x 5 alpha", margin, where));
    }
    return out;
}

inline std::vector<VerificationReport> verify_operator(int = 40)
{
    std::vector<VerificationReport> out;
    auto f = [](double x) { return x * x * std::exp(-x); };
    const auto u = GridFunction::sample(f, 80.0, 4096);
    const std::vector<double> probes = {0.5, 1.0, 2.0, 4.0, 8.0};
    double worst = 0.0, qworst = 0.0, pos = 1e300;
    std::string where, qwhere, pwhere;
    for (double a : {0.25, 0.5, 0.75}) {
        KernelParams k(a);
        auto F = apply_fourier(u, k);
        for (double x : probes) {
            double d = std::abs(apply_singular(u, x, k, 0.0) - F(x));
            if (d > worst) {
                worst = d;
                where = detail::fmt("alpha=%g,x=%g", a, x);
            }
        }
        double Q = quadratic_form(u, k);
        double ip = 0.0, nrm = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            ip += F[j] * u[j] * u.h();
            nrm += u[j] * u[j] * u.h();
        }
        if (std::abs(Q - ip) >= qworst) {
            qworst = std::abs(Q - ip);
            qwhere = detail::fmt("alpha=%g", a);
        }
        if (Q - nrm < pos) {
            pos = Q - nrm;
            pwhere = detail::fmt("alpha=%g", a);
        }
    }
    const std::string grid = "u=x^2 e^-x, L=80, n=4096, alpha in {0.25,0.5,0.75}";
    out.push_back(detail::residual_report("operator_dual_route", grid + ", 5 probes", worst, where, 1e-3));
    out.push_back(detail::residual_report("quadratic_form_consistency", grid, qworst, qwhere, 1e-3));
    out.push_back(detail::margin_report("quadratic_form_positivity", grid, pos, pwhere));
    {
        const auto v = GridFunction::sample(f, 2.0, 4001);
        double w = 0.0;
        std::string at;
        for (double a : {0.2, 0.6}) {
            double e = mellin_difference_residual(v, 0.7, KernelParams(a));
            if (e >= w) {
                w = e;
                at = detail::fmt("alpha=%g,x=0.7", a);
            }
        }
        out.push_back(detail::residual_report("mellin_difference", "u=x^2 e^-x, L=2, n=4001", w, at, 1e-4));
        double sw = 0.0;
        std::string sat;
        for (auto [g1, g2] : {std::pair{0.3, 0.5}, {0.7, 0.4}, {0.2, 1.1}, {1.3, 0.6}}) {
            auto inner = rl_integral_grid(v, g1);
            double e = std::abs(rl_integral(inner, 0.8, g2) - rl_integral(v, 0.8, g1 + g2));
            if (e >= sw) {
                sw = e;
                sat = detail::fmt("g1=%g,g2=%g", g1, g2);
            }
        }
        out.push_back(detail::residual_report("rl_semigroup", "u=x^2 e^-x, L=2, n=4001, x=0.8", sw, sat, 1e-6));
    }
    return out;
}

inline std::vector<VerificationReport> verify_symbols(int = 40)
{
    std::vector<VerificationReport> out;
    {
        double worst = 0.0;
        std::string where = "n=1";
        for (int n = 1; n <= 4; ++n) {
            auto loop = build_loop(std::make_shared<const SymbolSystem>(validation_symbol(n)), 512);
            double e = std::abs(winding_number(loop) + n);
            if (e > worst) {
                worst = e;
                where = "n=" + std::to_string(n);
            }
        }
        out.push_back(detail::residual_report("validation_winding", "c_(n), n=1..4, n_base=512", worst, where, 0.0));
    }
    {
        struct Case {
            double a, p, s;
            int w;
        };
        const Case cases[] = {{0.25, 4, 0.3, 0}, {0.25, 4, 0.7, 0}, {0.25, 4, 1.1, 0},
                              {0.75, 2, 2.25, 0}, {0.75, 2, 2.2, -1}};
        double bad = 0.0, gaps = 0.0;
        std::string where = "all match";
        for (const auto& c : cases) {
            auto loop = build_loop(SpectralParams::infer(c.a, c.p, c.s), 512);
            for (double g : loop.junction_gaps)
                gaps = std::max(gaps, g);
            gaps = std::max(gaps, loop.closure_gap);
            int w = winding_number(loop);
            if (w != c.w) {
                bad += 1.0;
                where = detail::fmt("alpha=%g,p=%g,s=%g", c.a, c.p, c.s);
            }
        }
        out.push_back(detail::residual_report("winding_set", "5 reference parameter triples", bad, where, 0.0));
        out.push_back(detail::residual_report("junction_gaps", "5 reference loops", gaps, "max over loops", 1e-6));
    }
    {
        auto loop = build_loop(SpectralParams(0.4, 2, 1.4, Regime::LOW), 512);
        double far = 0.0;
        std::string where;
        for (const auto& pt : loop.points)
            if (std::abs(pt.value - 1.0) > far) {
                far = std::abs(pt.value - 1.0);
                where = std::string(segment_name(pt.segment)) + detail::fmt(",t=%.6g", pt.t);
            }
        out.push_back(detail::margin_report("model_containment", "(0.4,2,1.4), n_base=512", 0.4 - far, where));
    }
    {
        double worst = 0.0;
        std::string where;
        const double gs[] = {0.3, 0.6, 0.8, 1.0, 1.7};
        const double rs[] = {0.0, 0.5, -0.2, 1.0};
        const double ys[] = {0.0, 2.0, -1.5, 4.0, 0.7};
        const double ps[] = {1.5, 2.0, 3.0};
        int count = 0;
        for (double g : gs)
            for (double r : rs)
                for (double y : ys)
                    for (double p : ps) {
                        if (++count % 3 != 0 || !(r > 1.0 / p - 1.0))
                            continue;
                        double e = mellin_symbol_residual(g, r, y, p);
                        if (e > worst) {
                            worst = e;
                            where = detail::fmt("gamma=%g,rho=%g,y=%g", g, r, y) + detail::fmt(",p=%g", p);
                        }
                    }
        out.push_back(detail::residual_report("mellin_symbol", "sub-sampled (gamma,rho,y,p) lattice", worst, where, 1e-7));
    }
    {
        double worst = 0.0;
        std::string where;
        for (double p : {1.5, 2.5, 3.0, 4.0}) {
            cplx centre = I / std::tan(2.0 * pi / p);
            double radius = 1.0 / std::abs(std::sin(2.0 * pi / p));
            for (int i = 0; i <= 40; ++i) {
                double xi = -5.0 + 0.25 * i;
                double e = std::abs(std::abs(loop_function(-1.0, 1.0, xi, p) - centre) - radius);
                if (e > worst) {
                    worst = e;
                    where = detail::fmt("p=%g,xi=%g", p, xi);
                }
            }
        }
        out.push_back(detail::residual_report("loop_arc", "p in {1.5,2.5,3,4}, xi in [-5,5]", worst, where, 1e-10));
    }
    return out;
}

inline std::vector<VerificationReport> verify_transcend(int density = 40)
{
    std::vector<VerificationReport> out;
    const int n = std::max(density, 20);
    out.push_back(detail::residual_report("alpha_c(0.5)", "bisection", std::abs(alpha_c(0.5) - 0.4303),
                                          detail::fmt("alpha_c=%.10f", alpha_c(0.5)), 1e-3));
    out.push_back(detail::residual_report("alpha_c(0.75)", "bisection", std::abs(alpha_c(0.75) - 0.726),
                                          detail::fmt("alpha_c=%.10f", alpha_c(0.75)), 2e-3));
    {
        double worst = 0.0;
        std::string where;
        for (int i = 1; i <= 50; ++i) {
            double a = i / 51.0;
            double scale = std::abs(std::tgamma(2.0 * a) * std::sin(pi * a));
            double e = std::abs(te_residual_zero(1.0 + alpha_c(a), a)) / scale;
            if (e > worst) {
                worst = e;
                where = detail::fmt("alpha=%.6g", a);
            }
        }
        out.push_back(detail::residual_report("root_residual", "alpha = i/51, i=1..50", worst, where, 1e-10));
    }
    for (auto r : {TeRegion::TE2, TeRegion::TE3, TeRegion::TE4, TeRegion::TE6, TeRegion::TE7, TeRegion::TE8})
        out.push_back(inequality_scan(r, n));
    out.push_back(no_solution_certificate(CertRegime::LOW, 30));
    out.push_back(no_solution_certificate(CertRegime::HIGH, 30));
    out.push_back(detail::residual_report("arg_beta_series", "sigma=1.2,gamma=0.8,xi=0.5,N=1e5",
                                          arg_beta_series_residual(1.2, 0.8, 0.5, 100000), "-", 1e-6));
    return out;
}

// suites run concurrently; std::map keeps the merge ordered by suite name
inline std::map<std::string, std::vector<VerificationReport>> verify_suites(const std::string& which,
                                                                            int density)
{
    using Suite = std::vector<VerificationReport> (*)(int);
    const std::pair<const char*, Suite> table[] = {{"kernel", verify_kernel},
                                                   {"operator", verify_operator},
                                                   {"symbols", verify_symbols},
                                                   {"transcend", verify_transcend}};
    std::vector<std::pair<std::string, std::future<std::vector<VerificationReport>>>> jobs;
    for (const auto& [name, fn] : table)
        if (which == "all" || which == name)
            jobs.emplace_back(name, std::async(std::launch::async, fn, density));
    if (jobs.empty())
        fail(errc::domain, "unknown suite '" + which + "'");
    std::map<std::string, std::vector<VerificationReport>> res;
    for (auto& [name, job] : jobs)
        res[name] = job.get();
    return res;
}

} // namespace whml
